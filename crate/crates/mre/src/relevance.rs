//! Relevance measures: belief update ratio, generalized and conditional Bayes
//! factors, the chain rule, evidence strength labels and GBF curves.

use crate::infer::{self, InferError};
use crate::model::{Assignment, Network};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Strength of evidence bands for a Bayes factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Strength {
    Negative,
    BarelyWorthMentioning,
    Substantial,
    Strong,
    VeryStrong,
    Decisive,
}

impl fmt::Display for Strength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strength::Negative => "Negative",
            Strength::BarelyWorthMentioning => "Barely worth mentioning",
            Strength::Substantial => "Substantial",
            Strength::Strong => "Strong",
            Strength::VeryStrong => "Very strong",
            Strength::Decisive => "Decisive",
        })
    }
}

/// Band of `value`; each boundary belongs to the lower band.
pub fn strength_label(value: f64) -> Strength {
    if value < 1.0 {
        Strength::Negative
    } else if value <= 3.0 {
        Strength::BarelyWorthMentioning
    } else if value <= 10.0 {
        Strength::Substantial
    } else if value <= 30.0 {
        Strength::Strong
    } else if value <= 100.0 {
        Strength::VeryStrong
    } else {
        Strength::Decisive
    }
}

/// A GBF value with the probabilities it was computed from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GbfScore {
    /// Nonnegative, possibly `f64::INFINITY`.
    pub value: f64,
    pub prior: f64,
    pub posterior: f64,
    pub strength: Strength,
}

impl GbfScore {
    pub fn from_probs(prior: f64, posterior: f64) -> Self {
        let value = gbf_from_probs(prior, posterior);
        Self {
            value,
            prior,
            posterior,
            strength: strength_label(value),
        }
    }
}

/// GBF from a prior and a posterior, with the zero and one conventions:
/// P(x)=0 gives 0, P(x)=1 gives 0, and P(x|e)=1 with P(x)<1 gives infinity.
pub fn gbf_from_probs(prior: f64, posterior: f64) -> f64 {
    if prior <= 0.0 || prior >= 1.0 {
        0.0
    } else if posterior >= 1.0 {
        f64::INFINITY
    } else {
        posterior * (1.0 - prior) / (prior * (1.0 - posterior))
    }
}

/// r(x; e) = P(x|e) / P(x).
pub fn belief_update_ratio(
    net: &Network,
    x: &Assignment,
    e: &Assignment,
) -> Result<f64, InferError> {
    let prior = infer::prob(net, x, &Assignment::new())?;
    if prior <= 0.0 {
        return Err(InferError::ZeroProbability);
    }
    Ok(infer::prob(net, x, e)? / prior)
}

/// GBF(x; e) computed from the posterior and prior odds.
pub fn gbf(net: &Network, x: &Assignment, e: &Assignment) -> Result<GbfScore, InferError> {
    let pe = infer::prob(net, e, &Assignment::new())?;
    if pe <= 0.0 {
        return Err(InferError::ImpossibleEvidence);
    }
    let prior = infer::prob(net, x, &Assignment::new())?;
    if prior <= 0.0 {
        return Ok(GbfScore::from_probs(0.0, 0.0));
    }
    Ok(GbfScore::from_probs(prior, infer::prob(net, x, e)?))
}

/// GBF(y; e | x): the GBF of `y` with `x` added to every conditioning set.
pub fn cbf(
    net: &Network,
    y: &Assignment,
    e: &Assignment,
    x: &Assignment,
) -> Result<f64, InferError> {
    let px = infer::prob(net, x, &Assignment::new())?;
    if px <= 0.0 {
        return Err(InferError::ZeroProbability);
    }
    let prior = infer::prob(net, y, x)?;
    if prior <= 0.0 {
        return Ok(0.0);
    }
    let given = x.union(e).ok_or(InferError::ImpossibleEvidence)?;
    Ok(gbf_from_probs(prior, infer::prob(net, y, &given)?))
}

/// GBF(x; e1) times GBF(x; ei | e1..e(i-1)) for the remaining pieces.
pub fn gbf_chain(net: &Network, x: &Assignment, pieces: &[Assignment]) -> Result<f64, InferError> {
    let mut seen = Assignment::new();
    let mut product = 1.0;
    for piece in pieces {
        let prior = infer::prob(net, x, &seen)?;
        seen = seen.union(piece).ok_or(InferError::ImpossibleEvidence)?;
        let posterior = infer::prob(net, x, &seen)?;
        product *= gbf_from_probs(prior, posterior);
    }
    Ok(product)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurveMode {
    /// Posterior = prior + delta.
    FixedDelta(f64),
    /// Posterior = ratio * prior.
    FixedRatio(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("grid point {0} is outside (0,1)")]
    Prior(f64),
    #[error("posterior {posterior} for prior {prior} is outside (0,1)")]
    Posterior { prior: f64, posterior: f64 },
}

/// GBF as a function of the prior for a fixed change of belief.
pub fn gbf_curve(grid: &[f64], mode: CurveMode) -> Result<Vec<(f64, f64)>, CurveError> {
    grid.iter()
        .map(|&p| {
            if !(p > 0.0 && p < 1.0) {
                return Err(CurveError::Prior(p));
            }
            let q = match mode {
                CurveMode::FixedDelta(d) => p + d,
                CurveMode::FixedRatio(r) => r * p,
            };
            if !(q > 0.0 && q < 1.0) {
                return Err(CurveError::Posterior {
                    prior: p,
                    posterior: q,
                });
            }
            Ok((p, gbf_from_probs(p, q)))
        })
        .collect()
}

/// CSV rendering with a `prior,gbf` header and six decimals.
pub fn curve_csv(points: &[(f64, f64)]) -> String {
    let mut out = String::from("prior,gbf\n");
    for (p, g) in points {
        out.push_str(&format!("{p:.6},{g:.6}\n"));
    }
    out
}
