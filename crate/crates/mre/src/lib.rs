//! Most relevant explanation in discrete Bayesian networks.
//!
//! The crate scores partial instantiations of target variables by the
//! generalized Bayes factor, finds the best one exactly, selects diverse top-K
//! sets under dominance, and implements the comparison methods K-MAP, K-MAP
//! simplification, explanation trees and causal explanation trees.

pub mod baselines;
pub mod bench;
pub mod infer;
pub mod kmre;
pub mod model;
pub mod relevance;
pub mod search;

pub use baselines::{BaselineParams, ExplanationTree};
pub use infer::InferError;
pub use kmre::{k_mre, KmreOptions, KmreResult};
pub use model::{
    parse_network, Assignment, ModelError, ModelErrors, Network, NetworkBuilder, Role,
};
pub use relevance::{gbf, GbfScore, Strength};
pub use search::{mre, score_all, Execution, MreOptions, ScoredExplanation, SearchError};
