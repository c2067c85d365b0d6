//! Candidate enumeration and exact MRE search.

use crate::infer::{InferError, TargetJoint};
use crate::model::{d_separated, Assignment, Network, VarId};
use crate::relevance::{GbfScore, Strength};
use serde::Serialize;
use std::cmp::Ordering;
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("network has no target variables")]
    NoTargets,
    #[error(transparent)]
    Infer(#[from] InferError),
}

/// Meaning of a score.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScoreKind {
    Gbf,
    Posterior,
    JointProbability,
    Likelihood,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScoredExplanation {
    pub explanation: Assignment,
    pub score: f64,
    pub kind: ScoreKind,
    pub strength: Option<Strength>,
    /// P(x), when known.
    pub prior: Option<f64>,
    /// P(x | e), when known.
    pub posterior: Option<f64>,
    /// Position in the candidate enumeration.
    pub order: usize,
}

impl ScoredExplanation {
    pub fn from_gbf(explanation: Assignment, gbf: GbfScore, order: usize) -> Self {
        Self {
            explanation,
            score: gbf.value,
            kind: ScoreKind::Gbf,
            strength: Some(gbf.strength),
            prior: Some(gbf.prior),
            posterior: Some(gbf.posterior),
            order,
        }
    }
}

/// Total ranking: score descending, then fewer variables, then enumeration
/// order.
pub fn rank_order(a: &ScoredExplanation, b: &ScoredExplanation) -> Ordering {
    b.score
        .total_cmp(&a.score)
        .then(a.explanation.len().cmp(&b.explanation.len()))
        .then(a.order.cmp(&b.order))
}

/// Which executor scores the candidates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Serial,
    /// Data-parallel scoring; serial when built without the `parallel`
    /// feature.
    #[default]
    Parallel,
}

/// Number of nonempty partial instantiations of the targets.
pub fn candidate_count(net: &Network) -> usize {
    net.targets()
        .iter()
        .map(|&v| net.card(v) + 1)
        .product::<usize>()
        - 1
}

/// Every nonempty partial instantiation of the targets, by subset size, then
/// variable names, then state order.
pub fn enumerate_explanations(net: &Network) -> Result<Vec<Assignment>, SearchError> {
    let mut targets = net.targets();
    if targets.is_empty() {
        return Err(SearchError::NoTargets);
    }
    targets.sort_by(|&a, &b| net.name(a).cmp(net.name(b)));
    let mut out = Vec::with_capacity(candidate_count(net));
    for size in 1..=targets.len() {
        for subset in combinations(targets.len(), size) {
            let vars: Vec<VarId> = subset.iter().map(|&i| targets[i]).collect();
            push_instantiations(net, &vars, &mut out);
        }
    }
    Ok(out)
}

/// Index subsets of `0..n` of size `k` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn push_instantiations(net: &Network, vars: &[VarId], out: &mut Vec<Assignment>) {
    let cards: Vec<usize> = vars.iter().map(|&v| net.card(v)).collect();
    let count: usize = cards.iter().product();
    for i in 0..count {
        let cfg = crate::model::decode_index(i, &cards);
        out.push(vars.iter().copied().zip(cfg).collect());
    }
}

fn score_one(tj: &TargetJoint, x: &Assignment, order: usize) -> ScoredExplanation {
    let prior = tj.prior(x);
    let posterior = if prior > 0.0 { tj.posterior(x) } else { 0.0 };
    ScoredExplanation::from_gbf(x.clone(), GbfScore::from_probs(prior, posterior), order)
}

fn score_candidates(
    tj: &TargetJoint,
    candidates: &[(usize, Assignment)],
    exec: Execution,
) -> Vec<ScoredExplanation> {
    let mut scored: Vec<ScoredExplanation> = match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => candidates
            .par_iter()
            .map(|(i, x)| score_one(tj, x, *i))
            .collect(),
        _ => candidates
            .iter()
            .map(|(i, x)| score_one(tj, x, *i))
            .collect(),
    };
    scored.sort_by(rank_order);
    scored
}

/// All candidates scored by GBF and ranked.
pub fn score_all(
    net: &Network,
    evidence: &Assignment,
) -> Result<Vec<ScoredExplanation>, SearchError> {
    score_all_with(net, evidence, Execution::default())
}

/// [`score_all`] with an explicit executor.
pub fn score_all_with(
    net: &Network,
    evidence: &Assignment,
    exec: Execution,
) -> Result<Vec<ScoredExplanation>, SearchError> {
    let candidates: Vec<(usize, Assignment)> = enumerate_explanations(net)?
        .into_iter()
        .enumerate()
        .collect();
    let tj = TargetJoint::new(net, &net.targets(), evidence)?;
    Ok(score_candidates(&tj, &candidates, exec))
}

const PRUNE_MARGIN: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MreOptions {
    /// Skip candidates containing a variable d-separated from the evidence
    /// given the rest of the candidate.
    pub prune: bool,
}

/// The candidate with the highest GBF.
pub fn mre(
    net: &Network,
    evidence: &Assignment,
    opts: MreOptions,
) -> Result<ScoredExplanation, SearchError> {
    let candidates: Vec<(usize, Assignment)> = enumerate_explanations(net)?
        .into_iter()
        .enumerate()
        .collect();
    let tj = TargetJoint::new(net, &net.targets(), evidence)?;
    if opts.prune {
        let evars = evidence.vars();
        let kept: Vec<(usize, Assignment)> = candidates
            .iter()
            .filter(|(_, x)| !has_irrelevant_variable(net, x, &evars))
            .cloned()
            .collect();
        let best = score_candidates(&tj, &kept, Execution::default())
            .into_iter()
            .next();
        // A pruned candidate always loses to its reduction when that
        // reduction scores above 1, so only then is the pruned optimum exact.
        // The margin keeps rounding noise around 1 on the exhaustive path.
        if let Some(best) = best.filter(|b| b.score > 1.0 + PRUNE_MARGIN) {
            return Ok(best);
        }
    }
    Ok(score_candidates(&tj, &candidates, Execution::default())
        .into_iter()
        .next()
        .expect("at least one candidate"))
}

fn has_irrelevant_variable(net: &Network, x: &Assignment, evidence_vars: &[VarId]) -> bool {
    x.len() > 1
        && x.vars().into_iter().any(|y| {
            let rest = x.without(y).vars();
            d_separated(net, &[y], evidence_vars, &rest).unwrap_or(false)
        })
}
