//! Helpers shared by the integration tests: a brute-force enumeration oracle
//! and a seeded random network generator.

#![allow(dead_code)]

use mre::model::{decode_index, Assignment, Network, NetworkBuilder, Role, VarId};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every full configuration with its probability, computed by multiplying CPT
/// entries; variables in `intervention` take their clamped state with
/// probability one.
pub fn enumerate_joint(net: &Network, intervention: &Assignment) -> Vec<(Vec<usize>, f64)> {
    let cards: Vec<usize> = (0..net.len()).map(|v| net.card(v)).collect();
    let size: usize = cards.iter().product();
    (0..size)
        .map(|i| {
            let cfg = decode_index(i, &cards);
            let mut p = 1.0;
            for v in 0..net.len() {
                p *= match intervention.get(v) {
                    Some(s) => f64::from(u8::from(cfg[v] == s)),
                    None => {
                        let parents: Vec<usize> = net.parents(v).iter().map(|&u| cfg[u]).collect();
                        net.cpt_entry(v, &parents, cfg[v])
                    }
                };
            }
            (cfg, p)
        })
        .collect()
}

pub fn mass(joint: &[(Vec<usize>, f64)], a: &Assignment) -> f64 {
    joint
        .iter()
        .filter(|(cfg, _)| a.iter().all(|(v, s)| cfg[v] == s))
        .map(|(_, p)| p)
        .sum()
}

/// P(event | given) by enumeration, `None` when P(given) is zero.
pub fn oracle(net: &Network, event: &Assignment, given: &Assignment) -> Option<f64> {
    oracle_do(net, event, given, &Assignment::new())
}

/// P(event | given) in the network mutilated by `intervention`.
pub fn oracle_do(
    net: &Network,
    event: &Assignment,
    given: &Assignment,
    intervention: &Assignment,
) -> Option<f64> {
    let joint = enumerate_joint(net, intervention);
    let pg = mass(&joint, given);
    if pg <= 0.0 {
        return None;
    }
    let Some(both) = event.union(given) else {
        return Some(0.0);
    };
    Some(mass(&joint, &both) / pg)
}

/// GBF from its definition P(e | x) / P(e | not x), by enumeration.
pub fn oracle_gbf(net: &Network, x: &Assignment, e: &Assignment) -> f64 {
    let joint = enumerate_joint(net, &Assignment::new());
    let px = mass(&joint, x);
    let pe = mass(&joint, e);
    let pxe = mass(&joint, &x.union(e).expect("disjoint"));
    let lik = pxe / px;
    let lik_not = (pe - pxe) / (1.0 - px);
    lik / lik_not
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true;
    }
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random distribution with every entry at least `floor`.
pub fn random_dist(rng: &mut impl Rng, n: usize, floor: f64) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| floor + rng.gen::<f64>()).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

pub struct RandomSpec {
    pub max_nodes: usize,
    pub max_card: usize,
    pub max_parents: usize,
}

impl Default for RandomSpec {
    fn default() -> Self {
        Self {
            max_nodes: 5,
            max_card: 3,
            max_parents: 3,
        }
    }
}

/// A random positive network with at least one target and one observation.
pub fn random_network(rng: &mut impl Rng, opts: &RandomSpec) -> Network {
    let n = rng.gen_range(2..=opts.max_nodes);
    let names: Vec<String> = (0..n).map(|i| format!("V{i}")).collect();
    let cards: Vec<usize> = (0..n).map(|_| rng.gen_range(2..=opts.max_card)).collect();
    let mut roles: Vec<Role> = (0..n)
        .map(|_| match rng.gen_range(0..3) {
            0 => Role::Target,
            1 => Role::Observation,
            _ => Role::Auxiliary,
        })
        .collect();
    let t = rng.gen_range(0..n);
    let o = (t + rng.gen_range(1..n)) % n;
    roles[t] = Role::Target;
    roles[o] = Role::Observation;
    let mut b = NetworkBuilder::new();
    let states: Vec<Vec<String>> = cards
        .iter()
        .map(|&c| (0..c).map(|s| format!("s{s}")).collect())
        .collect();
    for i in 0..n {
        let st: Vec<&str> = states[i].iter().map(String::as_str).collect();
        b = b.variable(&names[i], &st, roles[i]);
    }
    for i in 0..n {
        let parents: Vec<usize> = (0..i)
            .filter(|_| rng.gen_bool(0.5))
            .take(opts.max_parents)
            .collect();
        let rows: usize = parents.iter().map(|&p| cards[p]).product();
        let mut table = Vec::with_capacity(rows * cards[i]);
        for _ in 0..rows {
            table.extend(random_dist(rng, cards[i], 0.02));
        }
        let pnames: Vec<&str> = parents.iter().map(|&p| names[p].as_str()).collect();
        b = b.table(&names[i], &pnames, table);
    }
    b.build().expect("random networks are valid")
}

/// A random full instantiation of `vars`.
pub fn random_states(rng: &mut impl Rng, net: &Network, vars: &[VarId]) -> Assignment {
    vars.iter()
        .map(|&v| (v, rng.gen_range(0..net.card(v))))
        .collect()
}

/// A random nonempty subset of `vars`.
pub fn random_subset(rng: &mut impl Rng, vars: &[VarId]) -> Vec<VarId> {
    loop {
        let s: Vec<VarId> = vars.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if !s.is_empty() || vars.is_empty() {
            return s;
        }
    }
}

/// Evidence on every observation variable, drawn at random.
pub fn random_evidence(rng: &mut impl Rng, net: &Network) -> Assignment {
    let obs = net.with_role(Role::Observation);
    random_states(rng, net, &obs)
}
