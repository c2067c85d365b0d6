//! Invariants checked on randomized and constructed networks, shared by the
//! property tests and the acceptance suite.

#![allow(dead_code)]

use crate::common::*;
use mre::baselines::{self, BaselineParams};
use mre::bench::{fixture, FIXTURE_IDS};
use mre::infer;
use mre::kmre::{self, dominates, Exclusion, KmreOptions, Relation};
use mre::model::{d_separated, decode_index, Assignment, Network, NetworkBuilder, Role, VarId};
use mre::relevance::{self, belief_update_ratio, cbf, gbf, gbf_chain, gbf_from_probs};
use mre::search::{self, score_all_with, Execution, MreOptions};
use proptest::prelude::*;
use proptest::test_runner::{TestCaseError, TestRunner};
use rand::Rng;

fn p(net: &Network, x: &Assignment, e: &Assignment) -> f64 {
    infer::prob(net, x, e).unwrap()
}

/// Random explanation over the targets and evidence on the observations.
fn random_query(r: &mut impl Rng, net: &Network) -> (Assignment, Assignment) {
    let targets = net.targets();
    let xs = random_subset(r, &targets);
    (random_states(r, net, &xs), random_evidence(r, net))
}

/// The four expressions of the GBF.
fn four_forms(net: &Network, x: &Assignment, e: &Assignment) -> [f64; 4] {
    let px = p(net, x, &Assignment::new());
    let pxe = p(net, x, e);
    let pe = p(net, e, &Assignment::new());
    let pe_x = infer::likelihood(net, e, x).unwrap();
    // P(e | not x) by summing over the alternatives.
    let pe_not_x = (pe - pe_x * px) / (1.0 - px);
    let likelihood_ratio = pe_x / pe_not_x;
    let odds = pxe * (1.0 - px) / (px * (1.0 - pxe));
    let odds_ratio = (pxe / (1.0 - pxe)) / (px / (1.0 - px));
    let update_ratio = (pxe / px) / ((1.0 - pxe) / (1.0 - px));
    [likelihood_ratio, odds, odds_ratio, update_ratio]
}

/// X -> E plus an extra variable Y attached as `shape` says.
fn with_extra(shape: &str, px: f64, pe: [f64; 2], py: [f64; 4]) -> Network {
    let b = NetworkBuilder::new()
        .variable("X", &["x", "nx"], Role::Target)
        .variable("Y", &["y", "ny"], Role::Target)
        .variable("E", &["e", "ne"], Role::Observation)
        .table("X", &[], vec![px, 1.0 - px]);
    match shape {
        "isolated" => b.table("Y", &[], vec![py[0], 1.0 - py[0]]).table(
            "E",
            &["X"],
            vec![pe[0], 1.0 - pe[0], pe[1], 1.0 - pe[1]],
        ),
        "child" => b
            .table("Y", &["X"], vec![py[0], 1.0 - py[0], py[1], 1.0 - py[1]])
            .table("E", &["X"], vec![pe[0], 1.0 - pe[0], pe[1], 1.0 - pe[1]]),
        _ => b.table("Y", &[], vec![py[0], 1.0 - py[0]]).table(
            "E",
            &["X", "Y"],
            vec![
                pe[0],
                1.0 - pe[0],
                py[1],
                1.0 - py[1],
                pe[1],
                1.0 - pe[1],
                py[2],
                1.0 - py[2],
            ],
        ),
    }
    .build()
    .unwrap()
}

fn supporting_state(net: &Network, e: &Assignment) -> Option<Assignment> {
    (0..2)
        .map(|s| Assignment::new().with(0, s))
        .find(|x| belief_update_ratio(net, x, e).unwrap() > 1.0 + 1e-9)
}

/// Checks `queries` random conditional queries against enumeration.
pub fn check_queries(net: &Network, seed: u64, queries: usize) -> Result<(), TestCaseError> {
    let mut rng = rng(seed);
    let all: Vec<VarId> = (0..net.len()).collect();
    let joint = enumerate_joint(net, &Assignment::new());
    for _ in 0..queries {
        let given_vars = random_subset(&mut rng, &all);
        let given = random_states(&mut rng, net, &given_vars);
        let rest: Vec<VarId> = all
            .iter()
            .copied()
            .filter(|v| !given.contains(*v))
            .collect();
        if rest.is_empty() {
            continue;
        }
        let event_vars = random_subset(&mut rng, &rest);
        let event = random_states(&mut rng, net, &event_vars);
        let pg = mass(&joint, &given);
        let got = infer::prob(net, &event, &given);
        if pg <= 0.0 {
            prop_assert!(got.is_err(), "zero-probability evidence must be rejected");
            continue;
        }
        let want = mass(&joint, &event.union(&given).unwrap()) / pg;
        let got = got.unwrap();
        prop_assert!(
            (got - want).abs() < 1e-9,
            "P({}|{}) = {got}, oracle {want}",
            net.format_assignment(&event),
            net.format_assignment(&given)
        );
    }
    Ok(())
}

fn independent_given(net: &Network, a: VarId, b: VarId, z: &[VarId]) -> bool {
    let joint = enumerate_joint(net, &Assignment::new());
    let cards: Vec<usize> = z.iter().map(|&v| net.card(v)).collect();
    let count: usize = cards.iter().product();
    for i in 0..count {
        let zs: Assignment = z.iter().copied().zip(decode_index(i, &cards)).collect();
        let pz = mass(&joint, &zs);
        if pz <= 0.0 {
            continue;
        }
        for sa in 0..net.card(a) {
            for sb in 0..net.card(b) {
                let pab = mass(&joint, &zs.clone().with(a, sa).with(b, sb)) / pz;
                let pa = mass(&joint, &zs.clone().with(a, sa)) / pz;
                let pb = mass(&joint, &zs.clone().with(b, sb)) / pz;
                if (pab - pa * pb).abs() > 1e-9 {
                    return false;
                }
            }
        }
    }
    true
}

pub fn elimination_matches_enumeration_on_fixtures(_: ()) -> Result<(), TestCaseError> {
    for (i, id) in FIXTURE_IDS.iter().enumerate() {
        let net = fixture(id).unwrap();
        check_queries(&net, 1000 + i as u64, 150)?;
        for v in 0..net.len() {
            let total: f64 = (0..net.card(v))
                .map(|s| {
                    infer::prob(&net, &Assignment::new().with(v, s), &Assignment::new()).unwrap()
                })
                .sum();
            prop_assert!(
                (total - 1.0).abs() < 1e-9,
                "{id}: marginal of {} sums to {total}",
                net.name(v)
            );
        }
    }
    Ok(())
}

pub fn elimination_matches_enumeration_on_random_networks(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let net = random_network(&mut r, &RandomSpec::default());
    check_queries(&net, seed ^ 0x5eed, 20)
}

pub fn d_separation_implies_independence(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let net = random_network(
        &mut r,
        &RandomSpec {
            max_nodes: 5,
            max_card: 2,
            max_parents: 2,
        },
    );
    let n = net.len();
    let a = r.gen_range(0..n);
    let b = (a + r.gen_range(1..n)) % n;
    let z: Vec<VarId> = (0..n)
        .filter(|&v| v != a && v != b && r.gen_bool(0.4))
        .collect();
    if d_separated(&net, &[a], &[b], &z).unwrap() {
        prop_assert!(independent_given(&net, a, b, &z));
    }
    Ok(())
}

pub fn gbf_forms_agree(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let net = random_network(&mut r, &RandomSpec::default());
    let (x, e) = random_query(&mut r, &net);
    let forms = four_forms(&net, &x, &e);
    let direct = gbf(&net, &x, &e).unwrap().value;
    for f in forms {
        prop_assert!(rel_close(f, direct, 1e-9), "{forms:?} vs {direct}");
    }
    prop_assert!(rel_close(oracle_gbf(&net, &x, &e), direct, 1e-9));
    Ok(())
}

pub fn chain_rule_holds(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let net = random_network(
        &mut r,
        &RandomSpec {
            max_nodes: 5,
            max_card: 3,
            max_parents: 3,
        },
    );
    let targets = net.targets();
    let others: Vec<VarId> = (0..net.len())
        .filter(|&v| net.role(v) != Role::Target)
        .collect();
    prop_assume!(!others.is_empty());
    let xs = random_subset(&mut r, &targets);
    let x = random_states(&mut r, &net, &xs);
    let e = random_states(&mut r, &net, &others);
    // Split the evidence into single-variable pieces in a random order.
    let mut pieces: Vec<Assignment> = e
        .iter()
        .map(|(v, s)| Assignment::new().with(v, s))
        .collect();
    for i in (1..pieces.len()).rev() {
        pieces.swap(i, r.gen_range(0..=i));
    }
    let whole = gbf(&net, &x, &e).unwrap().value;
    let chained = gbf_chain(&net, &x, &pieces).unwrap();
    prop_assert!(rel_close(whole, chained, 1e-9), "{whole} vs {chained}");
    Ok(())
}

pub fn conditionally_independent_evidence_multiplies(
    (px, a): (f64, [f64; 4]),
) -> Result<(), TestCaseError> {
    // X -> E1 and X -> E2 with binary X.
    let net = NetworkBuilder::new()
        .variable("X", &["x", "nx"], Role::Target)
        .variable("E1", &["e", "ne"], Role::Observation)
        .variable("E2", &["e", "ne"], Role::Observation)
        .table("X", &[], vec![px, 1.0 - px])
        .table("E1", &["X"], vec![a[0], 1.0 - a[0], a[1], 1.0 - a[1]])
        .table("E2", &["X"], vec![a[2], 1.0 - a[2], a[3], 1.0 - a[3]])
        .build()
        .unwrap();
    let x = net.parse_bindings(&["X=x"]).unwrap();
    let e1 = net.parse_bindings(&["E1=e"]).unwrap();
    let e2 = net.parse_bindings(&["E2=ne"]).unwrap();
    let both = e1.union(&e2).unwrap();
    let product = gbf(&net, &x, &e1).unwrap().value * gbf(&net, &x, &e2).unwrap().value;
    prop_assert!(rel_close(
        gbf(&net, &x, &both).unwrap().value,
        product,
        1e-9
    ));
    Ok(())
}

pub fn belief_update_ratio_is_likelihood_over_evidence(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let net = random_network(&mut r, &RandomSpec::default());
    let (x, e) = random_query(&mut r, &net);
    let ratio = belief_update_ratio(&net, &x, &e).unwrap();
    let want = infer::likelihood(&net, &e, &x).unwrap() / p(&net, &e, &Assignment::new());
    prop_assert!(rel_close(ratio, want, 1e-9));
    Ok(())
}

pub fn fixed_ratio_gbf_rises_with_the_prior(
    (r, a, b): (f64, f64, f64),
) -> Result<(), TestCaseError> {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let (lo, hi) = (lo / r, hi / r);
    prop_assume!(hi - lo > 1e-9 && hi * r < 1.0);
    let closed = |p: f64| 1.0 + (r - 1.0) / (1.0 - r * p);
    let g_lo = gbf_from_probs(lo, r * lo);
    let g_hi = gbf_from_probs(hi, r * hi);
    prop_assert!(rel_close(g_lo, closed(lo), 1e-9));
    prop_assert!(rel_close(g_hi, closed(hi), 1e-9));
    prop_assert!(g_lo < g_hi);
    Ok(())
}

pub fn strength_labels_are_monotone((a, b): (f64, f64)) -> Result<(), TestCaseError> {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    prop_assert!(relevance::strength_label(lo) <= relevance::strength_label(hi));
    Ok(())
}

pub fn conditional_factor_bound_limits_extensions(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let net = loop {
        let net = random_network(&mut r, &RandomSpec::default());
        if net.targets().len() >= 2 {
            break net;
        }
    };
    let targets = net.targets();
    let e = random_evidence(&mut r, &net);
    let xs = random_subset(&mut r, &targets[..targets.len() - 1]);
    let x = random_states(&mut r, &net, &xs);
    let rest: Vec<VarId> = targets
        .iter()
        .copied()
        .filter(|&t| !x.contains(t))
        .collect();
    let yv = rest[r.gen_range(0..rest.len())];
    let y = Assignment::new().with(yv, r.gen_range(0..net.card(yv)));
    let px = p(&net, &x, &Assignment::new());
    let pxe = p(&net, &x, &e);
    prop_assume!(px < 1.0 && pxe < 1.0);
    let r_not_x = (1.0 - pxe) / (1.0 - px);
    let c = cbf(&net, &y, &e, &x).unwrap();
    let xy = x.union(&y).unwrap();
    let g_xy = gbf(&net, &xy, &e).unwrap().value;
    let g_x = gbf(&net, &x, &e).unwrap().value;
    if c <= 1.0 / r_not_x {
        prop_assert!(
            g_xy <= g_x * (1.0 + 1e-9),
            "cbf {c} bound {} gbf {g_xy} > {g_x}",
            1.0 / r_not_x
        );
    } else {
        prop_assert!(
            g_xy >= g_x * (1.0 - 1e-9),
            "cbf {c} bound {} gbf {g_xy} < {g_x}",
            1.0 / r_not_x
        );
    }
    Ok(())
}

pub fn independent_variables_dilute(
    (px, pe, py): (f64, [f64; 2], [f64; 4]),
) -> Result<(), TestCaseError> {
    let net = with_extra("isolated", px, pe, py);
    let e = net.parse_bindings(&["E=e"]).unwrap();
    prop_assume!((pe[0] - pe[1]).abs() > 1e-3);
    let x = supporting_state(&net, &e).unwrap();
    for s in 0..2 {
        let xy = x.clone().with(1, s);
        prop_assert!(gbf(&net, &xy, &e).unwrap().value < gbf(&net, &x, &e).unwrap().value);
    }
    Ok(())
}

pub fn conditionally_independent_variables_dilute(
    (px, pe, py): (f64, [f64; 2], [f64; 4]),
) -> Result<(), TestCaseError> {
    let net = with_extra("child", px, pe, py);
    let e = net.parse_bindings(&["E=e"]).unwrap();
    prop_assume!((pe[0] - pe[1]).abs() > 1e-3);
    let x = supporting_state(&net, &e).unwrap();
    for s in 0..2 {
        let y = Assignment::new().with(1, s);
        prop_assert!((p(&net, &y, &x.union(&e).unwrap()) - p(&net, &y, &x)).abs() < 1e-12);
        let xy = x.clone().with(1, s);
        prop_assert!(gbf(&net, &xy, &e).unwrap().value < gbf(&net, &x, &e).unwrap().value);
    }
    Ok(())
}

pub fn states_made_less_likely_dilute(
    (px, pe, py): (f64, [f64; 2], [f64; 4]),
) -> Result<(), TestCaseError> {
    let net = with_extra("collider", px, pe, py);
    let e = net.parse_bindings(&["E=e"]).unwrap();
    let Some(x) = supporting_state(&net, &e) else {
        return Ok(());
    };
    let xe = x.union(&e).unwrap();
    for s in 0..2 {
        let y = Assignment::new().with(1, s);
        if p(&net, &y, &xe) < p(&net, &y, &x) - 1e-9 {
            let xy = x.clone().with(1, s);
            prop_assert!(gbf(&net, &xy, &e).unwrap().value < gbf(&net, &x, &e).unwrap().value);
        }
    }
    Ok(())
}

pub fn explaining_away_orderings_agree(seed: u64) -> Result<(), TestCaseError> {
    // Y -> B, A -> C <- B, X -> C with binary variables.
    let mut r = rng(seed);
    let mut t = |rows: usize| -> Vec<f64> {
        (0..rows)
            .flat_map(|_| random_dist(&mut r, 2, 0.02))
            .collect()
    };
    let net = NetworkBuilder::new()
        .variable("Y", &["y", "ny"], Role::Auxiliary)
        .variable("X", &["x", "nx"], Role::Auxiliary)
        .variable("A", &["a", "na"], Role::Target)
        .variable("B", &["b", "nb"], Role::Target)
        .variable("C", &["c", "nc"], Role::Observation)
        .table("Y", &[], t(1))
        .table("X", &[], t(1))
        .table("A", &[], t(1))
        .table("B", &["Y"], t(2))
        .table("C", &["A", "B", "X"], t(8))
        .build()
        .unwrap();
    let c = net.parse_bindings(&["C=c"]).unwrap();
    let b = net.parse_bindings(&["B=b"]).unwrap();
    let xy = net.parse_bindings(&["X=x", "Y=y"]).unwrap();
    let with_a = xy.clone().with(2, 0);
    let without_a = xy.clone().with(2, 1);
    let post = |ctx: &Assignment| p(&net, &b, &ctx.union(&c).unwrap());
    let (p1, p2, p3) = (post(&with_a), post(&xy), post(&without_a));
    let (g1, g2, g3) = (
        cbf(&net, &b, &c, &with_a).unwrap(),
        cbf(&net, &b, &c, &xy).unwrap(),
        cbf(&net, &b, &c, &without_a).unwrap(),
    );
    let probs_ordered = p1 <= p2 + 1e-12 && p2 <= p3 + 1e-12;
    let factors_ordered = g1 <= g2 * (1.0 + 1e-9) && g2 <= g3 * (1.0 + 1e-9);
    prop_assert_eq!(
        probs_ordered,
        factors_ordered,
        "{:?} {:?}",
        (p1, p2, p3),
        (g1, g2, g3)
    );
    let probs_reversed = p1 >= p2 - 1e-12 && p2 >= p3 - 1e-12;
    let factors_reversed = g1 >= g2 * (1.0 - 1e-9) && g2 >= g3 * (1.0 - 1e-9);
    prop_assert_eq!(probs_reversed, factors_reversed);
    Ok(())
}

pub fn k_mre_output_is_undominated_and_exclusions_have_witnesses(
    seed: u64,
) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let net = random_network(&mut r, &RandomSpec::default());
    let e = random_evidence(&mut r, &net);
    let k = r.gen_range(1..=5);
    let res = kmre::k_mre(&net, &e, k, KmreOptions::default()).unwrap();
    prop_assert!(!res.selected.is_empty() && res.selected.len() <= k);
    let kept: Vec<_> = res.selected.iter().map(|s| s.explanation.clone()).collect();
    for (i, a) in kept.iter().enumerate() {
        for b in &kept[i + 1..] {
            prop_assert_eq!(dominates(a, b).relation, Relation::None);
        }
        if i > 0 {
            prop_assert!(a.score > 1.0);
        }
    }
    let ranked = search::score_all(&net, &e).unwrap();
    for s in &kept {
        let strong = ranked.iter().any(|c| {
            dominates(c, s).relation == Relation::Strong
                && c.explanation.is_strict_subset_of(&s.explanation)
        });
        prop_assert!(!strong, "kept entry is strongly dominated");
    }
    for x in &res.excluded {
        if let Exclusion::Dominated { by, relation } = &x.reason {
            let w = ranked.iter().find(|s| &s.explanation == by).unwrap();
            prop_assert_eq!(dominates(w, &x.candidate).relation, *relation);
            if *relation == Relation::Weak {
                prop_assert!(kept.iter().any(|s| &s.explanation == by));
            }
        }
    }
    // Every candidate ranked above the last kept entry is accounted for.
    let last = kept.last().unwrap();
    for c in ranked.iter().take_while(|c| c.order != last.order) {
        let is_kept = kept.iter().any(|s| s.order == c.order);
        let is_excluded = res.excluded.iter().any(|x| x.candidate.order == c.order);
        prop_assert!(is_kept || is_excluded);
    }
    Ok(())
}

pub fn simplifications_stay_within_the_likelihood_bound(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let net = random_network(&mut r, &RandomSpec::default());
    let e = random_evidence(&mut r, &net);
    let params = BaselineParams::default();
    let out = baselines::k_simp_detailed(&net, &e, &params).unwrap();
    prop_assert!(!out.is_empty());
    for s in &out {
        prop_assert!(!s.explanation.is_empty());
        prop_assert!(s.explanation.is_subset_of(&s.source));
        prop_assert!(
            s.likelihood >= (1.0 - params.simp_likelihood_factor) * s.source_likelihood - 1e-12
        );
        let want = oracle(&net, &e, &s.explanation).unwrap();
        prop_assert!((s.likelihood - want).abs() < 1e-9);
    }
    prop_assert!(out.windows(2).all(|w| w[0].likelihood >= w[1].likelihood));
    Ok(())
}

pub fn pruned_search_is_exact(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let net = random_network(&mut r, &RandomSpec::default());
    let e = random_evidence(&mut r, &net);
    let full = search::mre(&net, &e, MreOptions { prune: false }).unwrap();
    let pruned = search::mre(&net, &e, MreOptions { prune: true }).unwrap();
    // Explanations tied up to rounding may swap places.
    prop_assert!(rel_close(full.score, pruned.score, 1e-12));
    if full.explanation != pruned.explanation {
        let alt = gbf(&net, &full.explanation, &e).unwrap().value;
        prop_assert!(rel_close(alt, pruned.score, 1e-12));
    }
    Ok(())
}

pub fn serial_and_parallel_scoring_agree(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let net = random_network(&mut r, &RandomSpec::default());
    let e = random_evidence(&mut r, &net);
    prop_assert_eq!(
        score_all_with(&net, &e, Execution::Serial).unwrap(),
        score_all_with(&net, &e, Execution::Parallel).unwrap()
    );
    Ok(())
}

/// A named invariant with its case count.
pub struct Property {
    pub name: &'static str,
    pub cases: u32,
    run: fn(&mut TestRunner) -> Result<(), String>,
}

impl Property {
    /// Runs the invariant on `cases` generated inputs.
    pub fn check(&self) -> Result<(), String> {
        let config = ProptestConfig {
            cases: self.cases,
            failure_persistence: None,
            ..ProptestConfig::default()
        };
        (self.run)(&mut TestRunner::new(config))
    }
}

macro_rules! property {
    ($name:ident, $cases:expr, $strategy:expr) => {
        Property {
            name: stringify!($name),
            cases: $cases,
            run: |runner| runner.run(&$strategy, $name).map_err(|e| e.to_string()),
        }
    };
}

/// Every invariant.
pub fn all() -> Vec<Property> {
    vec![
        property!(elimination_matches_enumeration_on_fixtures, 1, Just(())),
        property!(
            elimination_matches_enumeration_on_random_networks,
            200,
            any::<u64>()
        ),
        property!(d_separation_implies_independence, 200, any::<u64>()),
        property!(gbf_forms_agree, 300, any::<u64>()),
        property!(chain_rule_holds, 300, any::<u64>()),
        property!(
            conditionally_independent_evidence_multiplies,
            300,
            (0.05f64..0.95, proptest::array::uniform4(0.05f64..0.95))
        ),
        property!(
            belief_update_ratio_is_likelihood_over_evidence,
            300,
            any::<u64>()
        ),
        property!(
            fixed_ratio_gbf_rises_with_the_prior,
            300,
            (1.01f64..6.0, 0.001f64..0.99, 0.001f64..0.99)
        ),
        property!(
            strength_labels_are_monotone,
            300,
            (0.0f64..500.0, 0.0f64..500.0)
        ),
        property!(
            conditional_factor_bound_limits_extensions,
            1000,
            any::<u64>()
        ),
        property!(
            independent_variables_dilute,
            300,
            (
                0.05f64..0.95,
                proptest::array::uniform2(0.05f64..0.95),
                proptest::array::uniform4(0.05f64..0.95)
            )
        ),
        property!(
            conditionally_independent_variables_dilute,
            300,
            (
                0.05f64..0.95,
                proptest::array::uniform2(0.05f64..0.95),
                proptest::array::uniform4(0.05f64..0.95)
            )
        ),
        property!(
            states_made_less_likely_dilute,
            300,
            (
                0.05f64..0.95,
                proptest::array::uniform2(0.05f64..0.95),
                proptest::array::uniform4(0.05f64..0.95)
            )
        ),
        property!(explaining_away_orderings_agree, 300, any::<u64>()),
        property!(
            k_mre_output_is_undominated_and_exclusions_have_witnesses,
            300,
            any::<u64>()
        ),
        property!(
            simplifications_stay_within_the_likelihood_bound,
            300,
            any::<u64>()
        ),
        property!(pruned_search_is_exact, 300, any::<u64>()),
        property!(serial_and_parallel_scoring_agree, 300, any::<u64>()),
    ]
}

/// The invariant called `name`.
pub fn get(name: &str) -> Property {
    all()
        .into_iter()
        .find(|p| p.name == name)
        .expect("known property")
}
