//! Exact inference by variable elimination: joint, conditional, likelihood,
//! interventional probabilities and information measures.

use crate::model::{decode_index, encode_index, Assignment, Network, VarId};
use std::collections::BTreeSet;
use thiserror::Error;

/// Default cap on the number of entries of a brute-force joint.
pub const DEFAULT_JOINT_CAP: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InferError {
    #[error("impossible evidence: the evidence has probability zero")]
    ImpossibleEvidence,
    #[error("conditioning assignment has probability zero")]
    ZeroProbability,
    #[error("variable #{0} appears on both sides of the query")]
    Overlap(VarId),
    #[error("joint of {size} entries exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
}

/// Nonnegative table over an ordered scope, row-major with the rightmost
/// variable varying fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    scope: Vec<VarId>,
    cards: Vec<usize>,
    values: Vec<f64>,
}

impl Factor {
    pub fn new(scope: Vec<VarId>, cards: Vec<usize>, values: Vec<f64>) -> Self {
        assert_eq!(scope.len(), cards.len(), "scope and cardinalities differ");
        assert_eq!(
            values.len(),
            cards.iter().product::<usize>(),
            "value count must match the scope"
        );
        Self {
            scope,
            cards,
            values,
        }
    }

    pub fn scalar(value: f64) -> Self {
        Self::new(Vec::new(), Vec::new(), vec![value])
    }

    pub fn scope(&self) -> &[VarId] {
        &self.scope
    }

    pub fn cards(&self) -> &[usize] {
        &self.cards
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    fn position(&self, var: VarId) -> Option<usize> {
        self.scope.iter().position(|&v| v == var)
    }

    /// Pointwise product over the union of both scopes.
    pub fn product(&self, other: &Factor) -> Factor {
        let mut scope = self.scope.clone();
        let mut cards = self.cards.clone();
        for (&v, &c) in other.scope.iter().zip(&other.cards) {
            if !scope.contains(&v) {
                scope.push(v);
                cards.push(c);
            }
        }
        let map_a: Vec<usize> = self.scope.iter().map(|v| index_of(&scope, *v)).collect();
        let map_b: Vec<usize> = other.scope.iter().map(|v| index_of(&scope, *v)).collect();
        let size = cards.iter().product();
        let mut values = Vec::with_capacity(size);
        for i in 0..size {
            let cfg = decode_index(i, &cards);
            let a = project(&cfg, &map_a, &self.cards);
            let b = project(&cfg, &map_b, &other.cards);
            values.push(self.values[a] * other.values[b]);
        }
        Factor::new(scope, cards, values)
    }

    /// Sums `var` out of the factor.
    pub fn sum_out(&self, var: VarId) -> Factor {
        let Some(pos) = self.position(var) else {
            return self.clone();
        };
        let mut scope = self.scope.clone();
        let mut cards = self.cards.clone();
        scope.remove(pos);
        cards.remove(pos);
        let mut values = vec![0.0; cards.iter().product()];
        for (i, &v) in self.values.iter().enumerate() {
            let mut cfg = decode_index(i, &self.cards);
            cfg.remove(pos);
            values[encode_index(&cfg, &cards)] += v;
        }
        Factor::new(scope, cards, values)
    }

    /// Same factor with its scope permuted to `order`.
    pub fn reorder(&self, order: &[VarId]) -> Factor {
        assert_eq!(
            order.len(),
            self.scope.len(),
            "reorder needs the full scope"
        );
        let map: Vec<usize> = self.scope.iter().map(|v| index_of(order, *v)).collect();
        let cards: Vec<usize> = order
            .iter()
            .map(|v| self.cards[self.position(*v).expect("variable in scope")])
            .collect();
        let mut values = vec![0.0; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            let cfg = decode_index(i, &self.cards);
            let mut out = vec![0; cfg.len()];
            for (k, &s) in cfg.iter().enumerate() {
                out[map[k]] = s;
            }
            values[encode_index(&out, &cards)] = v;
        }
        Factor::new(order.to_vec(), cards, values)
    }

    /// Sum of the entries consistent with `a`; bindings outside the scope are
    /// ignored.
    pub fn prob_of(&self, a: &Assignment) -> f64 {
        let fixed: Vec<Option<usize>> = self.scope.iter().map(|&v| a.get(v)).collect();
        sum_consistent(&self.values, &self.cards, &fixed)
    }
}

fn index_of(scope: &[VarId], var: VarId) -> usize {
    scope
        .iter()
        .position(|&v| v == var)
        .expect("variable in scope")
}

fn project(cfg: &[usize], map: &[usize], cards: &[usize]) -> usize {
    map.iter()
        .zip(cards)
        .fold(0, |acc, (&k, &c)| acc * c + cfg[k])
}

/// Sums the entries of a row-major table whose positions agree with `fixed`.
pub(crate) fn sum_consistent(values: &[f64], cards: &[usize], fixed: &[Option<usize>]) -> f64 {
    let free: Vec<usize> = (0..cards.len()).filter(|&i| fixed[i].is_none()).collect();
    let free_cards: Vec<usize> = free.iter().map(|&i| cards[i]).collect();
    let mut cfg: Vec<usize> = fixed.iter().map(|s| s.unwrap_or(0)).collect();
    let count: usize = free_cards.iter().product();
    let mut sum = 0.0;
    for i in 0..count {
        let sub = decode_index(i, &free_cards);
        for (k, &pos) in free.iter().enumerate() {
            cfg[pos] = sub[k];
        }
        sum += values[encode_index(&cfg, cards)];
    }
    sum
}

fn cpt_factor(net: &Network, var: VarId, fixed: &Assignment, intervention: &Assignment) -> Factor {
    if let Some(s) = intervention.get(var) {
        return match fixed.get(var) {
            Some(t) => Factor::scalar(if s == t { 1.0 } else { 0.0 }),
            None => {
                let mut values = vec![0.0; net.card(var)];
                values[s] = 1.0;
                Factor::new(vec![var], vec![net.card(var)], values)
            }
        };
    }
    let mut full: Vec<VarId> = net.parents(var).to_vec();
    full.push(var);
    let full_cards: Vec<usize> = full.iter().map(|&v| net.card(v)).collect();
    let scope: Vec<VarId> = full
        .iter()
        .copied()
        .filter(|&v| !fixed.contains(v))
        .collect();
    let cards: Vec<usize> = scope.iter().map(|&v| net.card(v)).collect();
    let size: usize = cards.iter().product();
    let table = net.table(var);
    let mut cfg: Vec<usize> = full.iter().map(|&v| fixed.get(v).unwrap_or(0)).collect();
    let free: Vec<usize> = (0..full.len())
        .filter(|&k| !fixed.contains(full[k]))
        .collect();
    let mut values = Vec::with_capacity(size);
    for i in 0..size {
        let sub = decode_index(i, &cards);
        for (k, &pos) in free.iter().enumerate() {
            cfg[pos] = sub[k];
        }
        values.push(table[encode_index(&cfg, &full_cards)]);
    }
    Factor::new(scope, cards, values)
}

/// Variables whose CPTs can influence `roots` in the mutilated network.
fn relevant_variables(net: &Network, roots: &[VarId], intervention: &Assignment) -> Vec<bool> {
    let mut keep = vec![false; net.len()];
    let mut stack = roots.to_vec();
    while let Some(v) = stack.pop() {
        if keep[v] {
            continue;
        }
        keep[v] = true;
        if !intervention.contains(v) {
            stack.extend_from_slice(net.parents(v));
        }
    }
    keep
}

/// Picks the next variable to eliminate by minimum fill-in, breaking ties by
/// variable name.
fn min_fill_pick(net: &Network, factors: &[Factor], candidates: &BTreeSet<VarId>) -> VarId {
    let mut best: Option<(usize, VarId)> = None;
    for &v in candidates {
        let mut neighbours = BTreeSet::new();
        for f in factors.iter().filter(|f| f.scope.contains(&v)) {
            neighbours.extend(f.scope.iter().copied().filter(|&u| u != v));
        }
        let nb: Vec<VarId> = neighbours.into_iter().collect();
        let mut fill = 0;
        for i in 0..nb.len() {
            for j in (i + 1)..nb.len() {
                let linked = factors
                    .iter()
                    .any(|f| f.scope.contains(&nb[i]) && f.scope.contains(&nb[j]));
                if !linked {
                    fill += 1;
                }
            }
        }
        let better = match best {
            None => true,
            Some((bf, bv)) => fill < bf || (fill == bf && net.name(v) < net.name(bv)),
        };
        if better {
            best = Some((fill, v));
        }
    }
    best.expect("at least one candidate").1
}

/// Factor over `keep` holding P(keep, fixed) in the network mutilated by
/// `intervention`.
pub fn joint_table(
    net: &Network,
    keep: &[VarId],
    fixed: &Assignment,
    intervention: &Assignment,
) -> Result<Factor, InferError> {
    for &v in keep {
        if fixed.contains(v) {
            return Err(InferError::Overlap(v));
        }
    }
    let mut roots = keep.to_vec();
    roots.extend(fixed.vars());
    let relevant = relevant_variables(net, &roots, intervention);
    let mut factors: Vec<Factor> = (0..net.len())
        .filter(|&v| relevant[v])
        .map(|v| cpt_factor(net, v, fixed, intervention))
        .collect();
    let mut to_eliminate: BTreeSet<VarId> = factors
        .iter()
        .flat_map(|f| f.scope.iter().copied())
        .filter(|v| !keep.contains(v))
        .collect();
    while !to_eliminate.is_empty() {
        let v = min_fill_pick(net, &factors, &to_eliminate);
        to_eliminate.remove(&v);
        let (with, without): (Vec<Factor>, Vec<Factor>) =
            factors.into_iter().partition(|f| f.scope.contains(&v));
        factors = without;
        let merged = with
            .iter()
            .fold(Factor::scalar(1.0), |acc, f| acc.product(f));
        factors.push(merged.sum_out(v));
    }
    let result = factors
        .iter()
        .fold(Factor::scalar(1.0), |acc, f| acc.product(f));
    Ok(result.reorder(keep))
}

/// P(a) in the network mutilated by `intervention`.
fn joint_prob(net: &Network, a: &Assignment, intervention: &Assignment) -> f64 {
    joint_table(net, &[], a, intervention)
        .expect("an empty keep set cannot overlap")
        .total()
        .clamp(0.0, 1.0)
}

fn conditional(
    net: &Network,
    event: &Assignment,
    given: &Assignment,
    intervention: &Assignment,
    zero: InferError,
) -> Result<f64, InferError> {
    let pg = joint_prob(net, given, intervention);
    if !given.is_empty() && pg <= 0.0 {
        return Err(zero);
    }
    let Some(both) = event.union(given) else {
        return Ok(0.0);
    };
    if given.is_empty() {
        return Ok(joint_prob(net, &both, intervention));
    }
    Ok((joint_prob(net, &both, intervention) / pg).clamp(0.0, 1.0))
}

/// P(assignment | evidence); the prior when `evidence` is empty.
pub fn prob(
    net: &Network,
    assignment: &Assignment,
    evidence: &Assignment,
) -> Result<f64, InferError> {
    conditional(
        net,
        assignment,
        evidence,
        &Assignment::new(),
        InferError::ImpossibleEvidence,
    )
}

/// P(evidence | assignment).
pub fn likelihood(
    net: &Network,
    evidence: &Assignment,
    assignment: &Assignment,
) -> Result<f64, InferError> {
    conditional(
        net,
        evidence,
        assignment,
        &Assignment::new(),
        InferError::ZeroProbability,
    )
}

/// P(event | evidence) after severing the parents of the intervened
/// variables and clamping them.
pub fn prob_do(
    net: &Network,
    event: &Assignment,
    evidence: &Assignment,
    intervention: &Assignment,
) -> Result<f64, InferError> {
    if let Some(v) = event.vars().into_iter().find(|&v| intervention.contains(v)) {
        return Err(InferError::Overlap(v));
    }
    conditional(
        net,
        event,
        evidence,
        intervention,
        InferError::ImpossibleEvidence,
    )
}

/// Full joint over all variables in declaration order by the chain rule.
pub fn brute_force_joint(net: &Network, cap: usize) -> Result<Factor, InferError> {
    let cards: Vec<usize> = (0..net.len()).map(|v| net.card(v)).collect();
    let size = cards
        .iter()
        .try_fold(1usize, |acc, &c| acc.checked_mul(c))
        .unwrap_or(usize::MAX);
    if size > cap {
        return Err(InferError::CapExceeded { size, cap });
    }
    let mut values = Vec::with_capacity(size);
    for i in 0..size {
        let cfg = decode_index(i, &cards);
        let mut p = 1.0;
        for v in 0..net.len() {
            let pcfg: Vec<usize> = net.parents(v).iter().map(|&u| cfg[u]).collect();
            p *= net.cpt_entry(v, &pcfg, cfg[v]);
            if p == 0.0 {
                break;
            }
        }
        values.push(p);
    }
    Ok(Factor::new((0..net.len()).collect(), cards, values))
}

/// Joint distribution of the targets with and without the evidence, from
/// which the probability of any partial target instantiation is read off.
#[derive(Clone, Debug)]
pub struct TargetJoint {
    vars: Vec<VarId>,
    cards: Vec<usize>,
    prior: Vec<f64>,
    joint: Vec<f64>,
    evidence_prob: f64,
}

impl TargetJoint {
    pub fn new(
        net: &Network,
        targets: &[VarId],
        evidence: &Assignment,
    ) -> Result<Self, InferError> {
        let none = Assignment::new();
        let joint = joint_table(net, targets, evidence, &none)?;
        let evidence_prob = joint.total();
        if evidence_prob <= 0.0 {
            return Err(InferError::ImpossibleEvidence);
        }
        let prior = joint_table(net, targets, &none, &none)?;
        Ok(Self {
            vars: targets.to_vec(),
            cards: joint.cards.clone(),
            prior: prior.values,
            joint: joint.values,
            evidence_prob,
        })
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn evidence_prob(&self) -> f64 {
        self.evidence_prob
    }

    fn fixed(&self, x: &Assignment) -> Vec<Option<usize>> {
        self.vars.iter().map(|&v| x.get(v)).collect()
    }

    /// P(x).
    pub fn prior(&self, x: &Assignment) -> f64 {
        sum_consistent(&self.prior, &self.cards, &self.fixed(x)).clamp(0.0, 1.0)
    }

    /// P(x, e).
    pub fn joint(&self, x: &Assignment) -> f64 {
        sum_consistent(&self.joint, &self.cards, &self.fixed(x)).clamp(0.0, 1.0)
    }

    /// P(x | e).
    pub fn posterior(&self, x: &Assignment) -> f64 {
        (self.joint(x) / self.evidence_prob).clamp(0.0, 1.0)
    }

    /// P(e | x), or `None` when P(x) = 0.
    pub fn likelihood(&self, x: &Assignment) -> Option<f64> {
        let p = self.prior(x);
        (p > 0.0).then(|| (self.joint(x) / p).clamp(0.0, 1.0))
    }

    /// Every full instantiation of the targets with P(x) and P(x, e), in
    /// row-major order.
    pub fn full_instantiations(&self) -> impl Iterator<Item = (Assignment, f64, f64)> + '_ {
        (0..self.joint.len()).map(move |i| {
            let cfg = decode_index(i, &self.cards);
            let a = self.vars.iter().copied().zip(cfg).collect();
            (a, self.prior[i], self.joint[i])
        })
    }
}

fn normalized(f: Factor) -> Result<Factor, InferError> {
    let total = f.total();
    if total <= 0.0 {
        return Err(InferError::ImpossibleEvidence);
    }
    let values = f.values.iter().map(|v| v / total).collect();
    Ok(Factor::new(f.scope, f.cards, values))
}

fn xlogy_ratio(p: f64, q: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * (p / q).ln()
    }
}

/// I(xs; ys | context) in nats.
pub fn mutual_information(
    net: &Network,
    xs: &[VarId],
    ys: &[VarId],
    context: &Assignment,
) -> Result<f64, InferError> {
    let mut keep = xs.to_vec();
    keep.extend_from_slice(ys);
    let table = normalized(joint_table(net, &keep, context, &Assignment::new())?)?;
    let nx: usize = xs.iter().map(|&v| net.card(v)).product();
    let ny: usize = ys.iter().map(|&v| net.card(v)).product();
    let mut px = vec![0.0; nx];
    let mut py = vec![0.0; ny];
    for (i, row) in table.values.chunks(ny).enumerate() {
        for (j, &p) in row.iter().enumerate() {
            px[i] += p;
            py[j] += p;
        }
    }
    let mut mi = 0.0;
    for (row, &pi) in table.values.chunks(ny).zip(&px) {
        for (&p, &pj) in row.iter().zip(&py) {
            mi += xlogy_ratio(p, pi * pj);
        }
    }
    Ok(mi.max(0.0))
}

/// Mean of I(x; y | context) over `ys`; zero for an empty `ys`.
pub fn cond_mutual_information(
    net: &Network,
    x: VarId,
    ys: &[VarId],
    context: &Assignment,
) -> Result<f64, InferError> {
    if ys.is_empty() {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for &y in ys {
        sum += mutual_information(net, &[x], &[y], context)?;
    }
    Ok(sum / ys.len() as f64)
}

/// H(x | context) in nats.
pub fn conditional_entropy(
    net: &Network,
    x: VarId,
    context: &Assignment,
) -> Result<f64, InferError> {
    let table = normalized(joint_table(net, &[x], context, &Assignment::new())?)?;
    Ok(-table
        .values
        .iter()
        .map(|&p| if p > 0.0 { p * p.ln() } else { 0.0 })
        .sum::<f64>())
}

/// Causal information flow from `x` to the joint of `targets` with the
/// context imposed by intervention, in nats.
pub fn causal_information_flow(
    net: &Network,
    x: VarId,
    targets: &[VarId],
    context: &Assignment,
) -> Result<f64, InferError> {
    if context.contains(x) {
        return Err(InferError::Overlap(x));
    }
    let none = Assignment::new();
    let px = normalized(joint_table(net, &[x], &none, context)?)?;
    let mut per_state = Vec::with_capacity(net.card(x));
    for s in 0..net.card(x) {
        let ctx = context.clone().with(x, s);
        per_state.push(normalized(joint_table(net, targets, &none, &ctx)?)?.values);
    }
    let n = per_state[0].len();
    let mix: Vec<f64> = (0..n)
        .map(|j| {
            (0..per_state.len())
                .map(|s| px.values[s] * per_state[s][j])
                .sum()
        })
        .collect();
    let mut flow = 0.0;
    for (s, dist) in per_state.iter().enumerate() {
        if px.values[s] <= 0.0 {
            continue;
        }
        let inner: f64 = dist
            .iter()
            .zip(&mix)
            .map(|(&p, &q)| xlogy_ratio(p, q))
            .sum();
        flow += px.values[s] * inner;
    }
    Ok(flow.max(0.0))
}
