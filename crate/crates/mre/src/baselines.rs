//! Comparison methods: K-MAP, K-MAP simplification, explanation trees and
//! causal explanation trees.

use crate::infer::{self, InferError, TargetJoint};
use crate::model::{Assignment, Network, VarId};
use crate::search::{enumerate_explanations, ScoreKind, ScoredExplanation, SearchError};
use serde::Serialize;
use serde_json::{json, Value};
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BaselineParams {
    pub et_mi_threshold: f64,
    pub et_branch_prob_threshold: f64,
    pub cet_flow_threshold: f64,
    pub simp_likelihood_factor: f64,
    pub k: usize,
}

impl Default for BaselineParams {
    fn default() -> Self {
        Self {
            et_mi_threshold: 0.05,
            et_branch_prob_threshold: 0.0,
            cet_flow_threshold: 0.01,
            simp_likelihood_factor: 0.05,
            k: 3,
        }
    }
}

fn full_instantiations(net: &Network) -> Result<Vec<(usize, Assignment)>, SearchError> {
    let n = net.targets().len();
    Ok(enumerate_explanations(net)?
        .into_iter()
        .enumerate()
        .filter(|(_, a)| a.len() == n)
        .collect())
}

/// Top-K full target instantiations scored by P(x, e); the ranking equals
/// the ranking by P(x | e).
pub fn k_map(
    net: &Network,
    evidence: &Assignment,
    k: usize,
) -> Result<Vec<ScoredExplanation>, SearchError> {
    let tj = TargetJoint::new(net, &net.targets(), evidence)?;
    let mut out: Vec<ScoredExplanation> = full_instantiations(net)?
        .into_iter()
        .map(|(order, x)| {
            let joint = tj.joint(&x);
            ScoredExplanation {
                score: joint,
                kind: ScoreKind::JointProbability,
                strength: None,
                prior: Some(tj.prior(&x)),
                posterior: Some(joint / tj.evidence_prob()),
                order,
                explanation: x,
            }
        })
        .collect();
    out.sort_by(|a, b| b.score.total_cmp(&a.score).then(a.order.cmp(&b.order)));
    out.truncate(k);
    Ok(out)
}

/// Result of simplifying one MAP solution.
#[derive(Clone, Debug, PartialEq)]
pub struct Simplification {
    pub explanation: Assignment,
    pub likelihood: f64,
    pub source: Assignment,
    pub source_likelihood: f64,
    pub deletions: usize,
}

/// Greedily deletes the variable whose removal keeps P(e | x) highest while
/// the likelihood stays within `factor` of the starting likelihood.
pub fn simplify(tj: &TargetJoint, x: &Assignment, factor: f64) -> Option<Simplification> {
    let start = tj.likelihood(x)?;
    let mut cur = x.clone();
    let mut lik = start;
    let mut deletions = 0;
    while cur.len() > 1 {
        let mut best: Option<(f64, Assignment)> = None;
        for v in cur.vars() {
            let reduced = cur.without(v);
            let l = tj.likelihood(&reduced).unwrap_or(0.0);
            if best.as_ref().is_none_or(|(bl, _)| l > *bl) {
                best = Some((l, reduced));
            }
        }
        let (l, reduced) = best.expect("nonempty explanation");
        if l < (1.0 - factor) * start {
            break;
        }
        cur = reduced;
        lik = l;
        deletions += 1;
    }
    Some(Simplification {
        explanation: cur,
        likelihood: lik,
        source: x.clone(),
        source_likelihood: start,
        deletions,
    })
}

/// Simplifications of the top-K MAP solutions, deduplicated and ranked by
/// likelihood.
pub fn k_simp_detailed(
    net: &Network,
    evidence: &Assignment,
    params: &BaselineParams,
) -> Result<Vec<Simplification>, SearchError> {
    let tj = TargetJoint::new(net, &net.targets(), evidence)?;
    let mut out: Vec<Simplification> = Vec::new();
    for sol in k_map(net, evidence, params.k)? {
        if sol.score <= 0.0 {
            continue;
        }
        if let Some(s) = simplify(&tj, &sol.explanation, params.simp_likelihood_factor) {
            if !out.iter().any(|o| o.explanation == s.explanation) {
                out.push(s);
            }
        }
    }
    out.sort_by(|a, b| b.likelihood.total_cmp(&a.likelihood));
    Ok(out)
}

/// [`k_simp_detailed`] as scored explanations.
pub fn k_simp(
    net: &Network,
    evidence: &Assignment,
    params: &BaselineParams,
) -> Result<Vec<ScoredExplanation>, SearchError> {
    Ok(k_simp_detailed(net, evidence, params)?
        .into_iter()
        .enumerate()
        .map(|(order, s)| ScoredExplanation {
            explanation: s.explanation,
            score: s.likelihood,
            kind: ScoreKind::Likelihood,
            strength: None,
            prior: None,
            posterior: None,
            order,
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeKind {
    /// Branches labeled with posterior probabilities.
    Explanation,
    /// Branches labeled with ln P(e | do(branch)) / P(e).
    Causal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TreeEdge {
    pub state: usize,
    pub label: f64,
    pub child: Option<TreeNode>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TreeNode {
    pub variable: VarId,
    /// Selection criterion value of the variable at this node.
    pub criterion: f64,
    /// Set when the node was created despite failing its threshold.
    pub forced: bool,
    pub edges: Vec<TreeEdge>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExplanationTree {
    pub kind: TreeKind,
    pub root: TreeNode,
}

fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

impl ExplanationTree {
    /// Every path from the root, ending at each edge, in preorder.
    pub fn branches(&self) -> Vec<(Assignment, f64)> {
        let mut out = Vec::new();
        collect_branches(&self.root, &Assignment::new(), &mut out);
        out
    }

    /// Branches by label descending, then fewer variables, then preorder.
    pub fn best_branches(&self) -> Vec<(Assignment, f64)> {
        let mut all: Vec<(usize, (Assignment, f64))> =
            self.branches().into_iter().enumerate().collect();
        all.sort_by(|(i, (a, la)), (j, (b, lb))| {
            let by_label = if close(*la, *lb) {
                Ordering::Equal
            } else {
                lb.total_cmp(la)
            };
            by_label.then(a.len().cmp(&b.len())).then(i.cmp(j))
        });
        all.into_iter().map(|(_, b)| b).collect()
    }

    /// Variables chosen under the branch `path`, or `None` if that branch is
    /// not expanded.
    pub fn variable_at(&self, path: &Assignment) -> Option<VarId> {
        let mut node = &self.root;
        let mut remaining = path.clone();
        while !remaining.is_empty() {
            let s = remaining.get(node.variable)?;
            remaining = remaining.without(node.variable);
            node = node.edges.iter().find(|e| e.state == s)?.child.as_ref()?;
        }
        Some(node.variable)
    }

    /// Indented text rendering.
    pub fn to_text(&self, net: &Network) -> String {
        let mut out = String::new();
        write_node(net, &self.root, 0, &mut out);
        out
    }

    pub fn to_json(&self, net: &Network) -> Value {
        json!({
            "kind": self.kind,
            "root": node_json(net, &self.root),
        })
    }
}

fn collect_branches(node: &TreeNode, prefix: &Assignment, out: &mut Vec<(Assignment, f64)>) {
    for edge in &node.edges {
        let path = prefix.clone().with(node.variable, edge.state);
        out.push((path.clone(), edge.label));
        if let Some(child) = &edge.child {
            collect_branches(child, &path, out);
        }
    }
}

fn write_node(net: &Network, node: &TreeNode, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    out.push_str(&format!(
        "{pad}{} [criterion {:.4}{}]\n",
        net.name(node.variable),
        node.criterion,
        if node.forced { ", forced" } else { "" }
    ));
    for edge in &node.edges {
        out.push_str(&format!(
            "{pad}  {}={}: {:.4}\n",
            net.name(node.variable),
            net.state_name(node.variable, edge.state),
            edge.label
        ));
        if let Some(child) = &edge.child {
            write_node(net, child, depth + 2, out);
        }
    }
}

fn label_json(v: f64) -> Value {
    if v.is_finite() {
        json!((v * 1e4).round() / 1e4)
    } else if v > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn node_json(net: &Network, node: &TreeNode) -> Value {
    let edges: Vec<Value> = node
        .edges
        .iter()
        .map(|e| {
            json!({
                "state": net.state_name(node.variable, e.state),
                "label": label_json(e.label),
                "child": e.child.as_ref().map(|c| node_json(net, c)),
            })
        })
        .collect();
    json!({
        "variable": net.name(node.variable),
        "criterion": label_json(node.criterion),
        "forced": node.forced,
        "edges": edges,
    })
}

struct Candidate {
    var: VarId,
    value: f64,
    tie: f64,
}

/// Highest criterion; near-equal values fall back to the larger `tie`
/// value, then to the variable name.
fn pick(net: &Network, cands: Vec<Candidate>) -> Candidate {
    cands
        .into_iter()
        .reduce(|best, c| {
            let better = if close(c.value, best.value) {
                if close(c.tie, best.tie) {
                    net.name(c.var) < net.name(best.var)
                } else {
                    c.tie > best.tie
                }
            } else {
                c.value > best.value
            };
            if better {
                c
            } else {
                best
            }
        })
        .expect("at least one unused target")
}

fn require_targets(net: &Network) -> Result<Vec<VarId>, SearchError> {
    let targets = net.targets();
    if targets.is_empty() {
        return Err(SearchError::NoTargets);
    }
    Ok(targets)
}

/// Explanation tree grown by average mutual information among the unused
/// targets given the evidence and the branch.
pub fn explanation_tree(
    net: &Network,
    evidence: &Assignment,
    params: &BaselineParams,
) -> Result<ExplanationTree, SearchError> {
    let targets = require_targets(net)?;
    if infer::prob(net, evidence, &Assignment::new())? <= 0.0 {
        return Err(InferError::ImpossibleEvidence.into());
    }
    let root = et_node(net, &targets, evidence, &Assignment::new(), params)?
        .expect("the root is always created");
    Ok(ExplanationTree {
        kind: TreeKind::Explanation,
        root,
    })
}

fn et_node(
    net: &Network,
    targets: &[VarId],
    evidence: &Assignment,
    branch: &Assignment,
    params: &BaselineParams,
) -> Result<Option<TreeNode>, SearchError> {
    let unused: Vec<VarId> = targets
        .iter()
        .copied()
        .filter(|&t| !branch.contains(t))
        .collect();
    if unused.is_empty() {
        return Ok(None);
    }
    let context = branch
        .union(evidence)
        .ok_or(InferError::ImpossibleEvidence)?;
    let evars = evidence.vars();
    let mut cands = Vec::with_capacity(unused.len());
    for &x in &unused {
        let others: Vec<VarId> = unused.iter().copied().filter(|&y| y != x).collect();
        let value = if others.is_empty() {
            infer::mutual_information(net, &[x], &evars, branch)?
        } else {
            infer::cond_mutual_information(net, x, &others, &context)?
        };
        let tie = infer::conditional_entropy(net, x, &context)?;
        cands.push(Candidate { var: x, value, tie });
    }
    let best = pick(net, cands);
    let is_root = branch.is_empty();
    let qualifies = best.value >= params.et_mi_threshold;
    if !qualifies && !is_root {
        return Ok(None);
    }
    let mut edges = Vec::with_capacity(net.card(best.var));
    for s in 0..net.card(best.var) {
        let path = branch.clone().with(best.var, s);
        let label = infer::prob(net, &path, evidence)?;
        let child = if qualifies && label > params.et_branch_prob_threshold {
            et_node(net, targets, evidence, &path, params)?
        } else {
            None
        };
        edges.push(TreeEdge {
            state: s,
            label,
            child,
        });
    }
    Ok(Some(TreeNode {
        variable: best.var,
        criterion: best.value,
        forced: !qualifies,
        edges,
    }))
}

/// Causal explanation tree grown by causal information flow to the evidence
/// variables with the branch imposed by intervention.
pub fn causal_explanation_tree(
    net: &Network,
    evidence: &Assignment,
    params: &BaselineParams,
) -> Result<ExplanationTree, SearchError> {
    let targets = require_targets(net)?;
    let pe = infer::prob(net, evidence, &Assignment::new())?;
    if pe <= 0.0 {
        return Err(InferError::ImpossibleEvidence.into());
    }
    let root = cet_node(net, &targets, evidence, pe, &Assignment::new(), params)?
        .expect("the root is always created");
    Ok(ExplanationTree {
        kind: TreeKind::Causal,
        root,
    })
}

fn cet_node(
    net: &Network,
    targets: &[VarId],
    evidence: &Assignment,
    pe: f64,
    branch: &Assignment,
    params: &BaselineParams,
) -> Result<Option<TreeNode>, SearchError> {
    let unused: Vec<VarId> = targets
        .iter()
        .copied()
        .filter(|&t| !branch.contains(t))
        .collect();
    if unused.is_empty() {
        return Ok(None);
    }
    let evars = evidence.vars();
    let mut cands = Vec::with_capacity(unused.len());
    for &x in &unused {
        let value = infer::causal_information_flow(net, x, &evars, branch)?;
        cands.push(Candidate {
            var: x,
            value,
            tie: 0.0,
        });
    }
    let best = pick(net, cands);
    let is_root = branch.is_empty();
    let qualifies = best.value >= params.cet_flow_threshold;
    if !qualifies && !is_root {
        return Ok(None);
    }
    let mut edges = Vec::with_capacity(net.card(best.var));
    for s in 0..net.card(best.var) {
        let path = branch.clone().with(best.var, s);
        let p = infer::prob_do(net, evidence, &Assignment::new(), &path)?;
        let label = if p > 0.0 {
            (p / pe).ln()
        } else {
            f64::NEG_INFINITY
        };
        let child = if qualifies {
            cet_node(net, targets, evidence, pe, &path, params)?
        } else {
            None
        };
        edges.push(TreeEdge {
            state: s,
            label,
            child,
        });
    }
    Ok(Some(TreeNode {
        variable: best.var,
        criterion: best.value,
        forced: !qualifies,
        edges,
    }))
}
