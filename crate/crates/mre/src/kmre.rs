//! Top-K explanation sets under strong and weak dominance.

use crate::model::{Assignment, Network};
use crate::search::{score_all, ScoredExplanation, SearchError};
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// The dominating explanation is a strict subset with a score at least as high.
    Strong,
    /// The dominating explanation is a strict superset with a higher score.
    Weak,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    FirstDominates,
    SecondDominates,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DominanceVerdict {
    pub relation: Relation,
    pub direction: Option<Direction>,
}

/// Relation by which `x` dominates `y`, if any.
fn one_way(x: &ScoredExplanation, y: &ScoredExplanation) -> Relation {
    let (a, b) = (&x.explanation, &y.explanation);
    if a.is_strict_subset_of(b) && x.score >= y.score {
        Relation::Strong
    } else if b.is_strict_subset_of(a) && x.score > y.score {
        Relation::Weak
    } else {
        Relation::None
    }
}

/// Dominance between two explanations scored against the same evidence.
pub fn dominates(x: &ScoredExplanation, y: &ScoredExplanation) -> DominanceVerdict {
    match (one_way(x, y), one_way(y, x)) {
        (Relation::None, Relation::None) => DominanceVerdict {
            relation: Relation::None,
            direction: None,
        },
        (Relation::None, r) => DominanceVerdict {
            relation: r,
            direction: Some(Direction::SecondDominates),
        },
        (r, _) => DominanceVerdict {
            relation: r,
            direction: Some(Direction::FirstDominates),
        },
    }
}

/// Explanations dominated by no other member of `list`, order preserved.
pub fn minimal_set(list: &[ScoredExplanation]) -> Vec<ScoredExplanation> {
    list.iter()
        .filter(|y| list.iter().all(|x| one_way(x, y) == Relation::None))
        .cloned()
        .collect()
}

/// A dominating member of `list` for `y`, if one exists.
pub fn witness<'a>(
    list: &'a [ScoredExplanation],
    y: &ScoredExplanation,
) -> Option<(&'a ScoredExplanation, Relation)> {
    list.iter().find_map(|x| match one_way(x, y) {
        Relation::None => None,
        r => Some((x, r)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KmreOptions {
    /// Beyond the first explanation, keep only scores strictly above this.
    pub gbf_floor: Option<f64>,
    /// Report explanations that differ only by interchangeable states once.
    pub collapse_interchangeable: bool,
}

impl Default for KmreOptions {
    fn default() -> Self {
        Self {
            gbf_floor: Some(1.0),
            collapse_interchangeable: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KmreEntry {
    pub explanation: ScoredExplanation,
    /// Number of equivalent explanations this entry stands for, itself included.
    pub equivalents: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Exclusion {
    Dominated { by: Assignment, relation: Relation },
    Equivalent { to: Assignment },
    BelowFloor,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Excluded {
    pub candidate: ScoredExplanation,
    pub reason: Exclusion,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KmreResult {
    pub selected: Vec<KmreEntry>,
    /// Candidates passed over before the selection was complete.
    pub excluded: Vec<Excluded>,
}

/// Strict nonempty subsets of `a`.
fn strict_subsets(a: &Assignment) -> Vec<Assignment> {
    let pairs: Vec<(usize, usize)> = a.iter().collect();
    let full = (1usize << pairs.len()) - 1;
    (1..full)
        .map(|mask| {
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p)
                .collect()
        })
        .collect()
}

/// Top-K selection over a ranked list. A candidate is dropped when any
/// candidate strongly dominates it or when an already kept explanation weakly
/// dominates it.
pub fn select(
    net: &Network,
    ranked: &[ScoredExplanation],
    k: usize,
    opts: KmreOptions,
) -> KmreResult {
    let classes: Vec<Vec<usize>> = (0..net.len()).map(|v| net.state_classes(v)).collect();
    let canonical =
        |a: &Assignment| -> Assignment { a.iter().map(|(v, s)| (v, classes[v][s])).collect() };
    let index: HashMap<&Assignment, usize> = ranked
        .iter()
        .enumerate()
        .map(|(i, c)| (&c.explanation, i))
        .collect();
    // The highest-ranked strict subset scoring at least as high.
    let strong_witness = |cand: &ScoredExplanation| -> Option<&ScoredExplanation> {
        strict_subsets(&cand.explanation)
            .iter()
            .filter_map(|sub| index.get(sub).copied())
            .filter(|&i| ranked[i].score >= cand.score)
            .min()
            .map(|i| &ranked[i])
    };
    let mut selected: Vec<KmreEntry> = Vec::new();
    let mut keys: Vec<Assignment> = Vec::new();
    let mut excluded = Vec::new();
    let mut closed = false;
    for cand in ranked {
        if opts.collapse_interchangeable {
            let key = canonical(&cand.explanation);
            if let Some(i) = keys.iter().position(|k| *k == key) {
                selected[i].equivalents += 1;
                excluded.push(Excluded {
                    candidate: cand.clone(),
                    reason: Exclusion::Equivalent {
                        to: selected[i].explanation.explanation.clone(),
                    },
                });
                continue;
            }
        }
        if closed || selected.len() == k {
            // Past this point only equivalents of kept entries matter.
            if opts.collapse_interchangeable {
                continue;
            }
            break;
        }
        let kept: Vec<ScoredExplanation> = selected.iter().map(|e| e.explanation.clone()).collect();
        let dominator = witness(&kept, cand)
            .map(|(by, relation)| (by.explanation.clone(), relation))
            .or_else(|| strong_witness(cand).map(|by| (by.explanation.clone(), Relation::Strong)));
        if let Some((by, relation)) = dominator {
            excluded.push(Excluded {
                candidate: cand.clone(),
                reason: Exclusion::Dominated { by, relation },
            });
            continue;
        }
        if let Some(floor) = opts.gbf_floor {
            if !selected.is_empty() && cand.score <= floor {
                excluded.push(Excluded {
                    candidate: cand.clone(),
                    reason: Exclusion::BelowFloor,
                });
                closed = true;
                continue;
            }
        }
        keys.push(canonical(&cand.explanation));
        selected.push(KmreEntry {
            explanation: cand.clone(),
            equivalents: 1,
        });
    }
    KmreResult { selected, excluded }
}

/// Top-K explanations by GBF with dominated and equivalent ones removed.
pub fn k_mre(
    net: &Network,
    evidence: &Assignment,
    k: usize,
    opts: KmreOptions,
) -> Result<KmreResult, SearchError> {
    let ranked = score_all(net, evidence)?;
    Ok(select(net, &ranked, k.max(1), opts))
}
