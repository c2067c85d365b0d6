//! Embedded benchmark networks and golden scenarios with reference scores.

use crate::baselines::{self, BaselineParams, ExplanationTree};
use crate::kmre::{self, KmreOptions, KmreResult};
use crate::model::{parse_network, Assignment, ModelError, ModelErrors, Network};
use crate::search::{self, MreOptions, ScoredExplanation, SearchError};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub const FIXTURE_IDS: [&str; 6] = [
    "circuit",
    "vacation1",
    "vacation100",
    "academe",
    "asia",
    "circuit2",
];

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("fixture `{id}`: {source}")]
    Fixture { id: String, source: ModelErrors },
    #[error("scenario `{id}`: {source}")]
    Binding { id: String, source: ModelError },
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// JSON text of an embedded fixture.
pub fn fixture_text(id: &str) -> Option<&'static str> {
    Some(match id {
        "circuit" => include_str!("../data/circuit.json"),
        "vacation1" => include_str!("../data/vacation1.json"),
        "vacation100" => include_str!("../data/vacation100.json"),
        "academe" => include_str!("../data/academe.json"),
        "asia" => include_str!("../data/asia.json"),
        "circuit2" => include_str!("../data/circuit2.json"),
        _ => return None,
    })
}

/// A validated embedded fixture.
pub fn fixture(id: &str) -> Result<Network, BenchError> {
    let text = fixture_text(id).ok_or_else(|| BenchError::UnknownFixture(id.to_string()))?;
    parse_network(text).map_err(|source| BenchError::Fixture {
        id: id.to_string(),
        source,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mre,
    Kmre,
    Kmap,
    Ksimp,
    Etree,
    Cetree,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Mre,
        Method::Kmre,
        Method::Kmap,
        Method::Ksimp,
        Method::Etree,
        Method::Cetree,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Mre => "mre",
            Method::Kmre => "kmre",
            Method::Kmap => "kmap",
            Method::Ksimp => "ksimp",
            Method::Etree => "etree",
            Method::Cetree => "cetree",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

/// Settings shared by all methods.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    pub k: usize,
    pub params: BaselineParams,
    pub kmre: KmreOptions,
    pub mre: MreOptions,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            k: 3,
            params: BaselineParams::default(),
            kmre: KmreOptions::default(),
            mre: MreOptions { prune: true },
        }
    }
}

/// Output of one explanation method.
#[derive(Clone, Debug, PartialEq)]
pub enum MethodOutput {
    Ranked(Vec<ScoredExplanation>),
    Kmre(KmreResult),
    Tree(ExplanationTree),
}

impl MethodOutput {
    /// Ranked explanations, empty for trees.
    pub fn ranked(&self) -> Vec<ScoredExplanation> {
        match self {
            MethodOutput::Ranked(r) => r.clone(),
            MethodOutput::Kmre(k) => k.selected.iter().map(|e| e.explanation.clone()).collect(),
            MethodOutput::Tree(_) => Vec::new(),
        }
    }
}

/// Runs `method` on `net` given `evidence`.
pub fn run_method(
    net: &Network,
    evidence: &Assignment,
    method: Method,
    cfg: &RunConfig,
) -> Result<MethodOutput, SearchError> {
    let params = BaselineParams {
        k: cfg.k,
        ..cfg.params
    };
    Ok(match method {
        Method::Mre => MethodOutput::Ranked(vec![search::mre(net, evidence, cfg.mre)?]),
        Method::Kmre => MethodOutput::Kmre(kmre::k_mre(net, evidence, cfg.k, cfg.kmre)?),
        Method::Kmap => MethodOutput::Ranked(baselines::k_map(net, evidence, cfg.k)?),
        Method::Ksimp => MethodOutput::Ranked(baselines::k_simp(net, evidence, &params)?),
        Method::Etree => MethodOutput::Tree(baselines::explanation_tree(net, evidence, &params)?),
        Method::Cetree => {
            MethodOutput::Tree(baselines::causal_explanation_tree(net, evidence, &params)?)
        }
    })
}

/// One reference row: the explanation expected at a rank and its score.
#[derive(Clone, Debug)]
pub struct ExpectedRow {
    pub method: Method,
    pub explanation: Vec<(&'static str, &'static str)>,
    pub score: f64,
    pub tolerance: f64,
    /// Caveat about the reference value, if any.
    pub note: Option<&'static str>,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub id: &'static str,
    pub network: &'static str,
    pub evidence: Vec<(&'static str, &'static str)>,
    pub rows: Vec<ExpectedRow>,
    /// Methods whose output must have exactly this many rows.
    pub counts: Vec<(Method, usize)>,
}

fn row(
    method: Method,
    explanation: &[(&'static str, &'static str)],
    score: f64,
    tolerance: f64,
) -> ExpectedRow {
    ExpectedRow {
        method,
        explanation: explanation.to_vec(),
        score,
        tolerance,
        note: None,
    }
}

fn noted(mut r: ExpectedRow, note: &'static str) -> ExpectedRow {
    r.note = Some(note);
    r
}

const T2: f64 = 0.005;
const T3: f64 = 0.0005;
const T4: f64 = 0.00005;
const EXACT: f64 = 1e-9;

/// All golden scenarios.
pub fn scenarios() -> Vec<Scenario> {
    use Method::*;
    const DEF: &str = "defective";
    const OK: &str = "ok";
    let h = ("Healthy", "healthy");
    let u = ("Healthy", "unhealthy");
    let home = ("VacationLocation", "home");
    let hiking = ("VacationLocation", "hiking");
    let trip = ("VacationLocation", "trail1");
    let any_trip = "any trail stands for all 100 interchangeable trails";
    let ab = "abnormal";
    vec![
        Scenario {
            id: "circuit",
            network: "circuit",
            evidence: vec![("Input", "current"), ("TotalOutput", "current")],
            rows: vec![
                row(Kmre, &[("B", DEF), ("C", DEF)], 42.62, T2),
                row(Kmre, &[("A", DEF)], 39.45, T2),
                row(Kmre, &[("B", DEF), ("D", DEF)], 35.88, T2),
                row(Kmap, &[("A", OK), ("B", DEF), ("C", DEF), ("D", OK)], 0.0128, T4),
                row(Kmap, &[("A", DEF), ("B", OK), ("C", OK), ("D", OK)], 0.0099, T4),
                row(Kmap, &[("A", OK), ("B", DEF), ("C", OK), ("D", DEF)], 0.0082, T4),
                row(Ksimp, &[("B", DEF), ("D", DEF)], 0.9818, T4),
                row(Ksimp, &[("B", DEF), ("C", DEF)], 0.9683, T4),
                row(Ksimp, &[("A", DEF)], 0.9014, T4),
            ],
            counts: vec![],
        },
        Scenario {
            id: "vacation1-alive",
            network: "vacation1",
            evidence: vec![("Alive", "alive")],
            rows: vec![
                row(Kmre, &[h], 1.3378, T3),
                row(Kmre, &[home], 1.0078, T3),
                row(Kmap, &[h, hiking], 0.6336, T3),
                row(Kmap, &[h, home], 0.1584, T3),
                row(Kmap, &[u, home], 0.1440, T3),
                row(Ksimp, &[h], 0.9900, T3),
                row(Ksimp, &[home], 0.9450, T3),
            ],
            counts: vec![(Kmre, 2), (Ksimp, 2)],
        },
        Scenario {
            id: "vacation1-dead",
            network: "vacation1",
            evidence: vec![("Alive", "dead")],
            rows: vec![
                row(Kmre, &[u, hiking], 36.00, T3),
                row(Kmap, &[u, hiking], 0.0360, T3),
                row(Kmap, &[u, home], 0.0160, T3),
                row(Kmap, &[h, hiking], 0.0064, T3),
                row(Ksimp, &[u, hiking], 0.9000, T3),
                row(Ksimp, &[u], 0.2600, T3),
                row(Ksimp, &[hiking], 0.0624, T3),
            ],
            counts: vec![(Kmre, 1)],
        },
        Scenario {
            id: "vacation100-alive",
            network: "vacation100",
            evidence: vec![("Alive", "alive")],
            rows: vec![
                row(Kmre, &[h], 1.3378, T3),
                noted(row(Kmre, &[trip], 1.0034, T3), any_trip),
                row(Kmap, &[u, home], 0.1440, T3),
                row(Kmap, &[h, home], 0.0792, T3),
                noted(row(Kmap, &[h, trip], 0.0071, T3), any_trip),
                row(Ksimp, &[h], 0.9900, T3),
                row(Ksimp, &[home], 0.9300, T3),
            ],
            counts: vec![(Kmre, 2), (Ksimp, 2)],
        },
        Scenario {
            id: "vacation100-dead",
            network: "vacation100",
            evidence: vec![("Alive", "dead")],
            rows: vec![
                row(Kmre, &[u], 26.0000, T3),
                row(Kmre, &[home], 1.2310, T3),
                row(Kmap, &[u, home], 0.0160, T3),
                row(Kmap, &[h, home], 0.0008, T3),
                noted(row(Kmap, &[u, trip], 0.0004, T3), any_trip),
                noted(row(Ksimp, &[u, trip], 0.9000, T3), any_trip),
                row(Ksimp, &[u], 0.2600, T3),
                row(Ksimp, &[home], 0.0700, T3),
            ],
            counts: vec![(Kmre, 2)],
        },
        Scenario {
            id: "academe",
            network: "academe",
            evidence: vec![("FinalMark", "fail")],
            rows: vec![
                row(Kmre, &[("Theory", "bad")], 3.0205, T4),
                row(Kmre, &[("Practice", "bad"), ("Extra", "no")], 2.2986, T4),
                row(
                    Kmre,
                    &[("Theory", "good"), ("Practice", "bad"), ("OtherFactors", "minus")],
                    2.0209,
                    T4,
                ),
                row(
                    Kmap,
                    &[("Theory", "bad"), ("Practice", "good"), ("Extra", "no"), ("OtherFactors", "plus")],
                    0.0958,
                    T4,
                ),
                row(
                    Kmap,
                    &[("Theory", "bad"), ("Practice", "average"), ("Extra", "no"), ("OtherFactors", "plus")],
                    0.0399,
                    T4,
                ),
                row(
                    Kmap,
                    &[("Theory", "average"), ("Practice", "bad"), ("Extra", "no"), ("OtherFactors", "plus")],
                    0.0399,
                    T4,
                ),
                row(Ksimp, &[("Theory", "bad"), ("Extra", "no")], 0.9600, T4),
                noted(
                    row(Ksimp, &[("Theory", "average"), ("Practice", "average")], 0.7260, T4),
                    "reference label reads (average theory, bad practice), whose likelihood is 0.8925",
                ),
            ],
            counts: vec![(Ksimp, 2)],
        },
        Scenario {
            id: "asia-dyspnea",
            network: "asia",
            evidence: vec![("Dyspnea", "yes")],
            rows: vec![
                row(Kmre, &[("Bronchitis", "yes")], 6.1391, T4),
                row(Kmre, &[("LungCancer", "yes")], 1.9678, T4),
                row(Kmre, &[("Tuberculosis", "yes")], 1.8276, T4),
                row(
                    Kmap,
                    &[("Tuberculosis", "no"), ("LungCancer", "no"), ("Bronchitis", "yes")],
                    0.3313,
                    T4,
                ),
                row(
                    Kmap,
                    &[("Tuberculosis", "no"), ("LungCancer", "no"), ("Bronchitis", "no")],
                    0.0521,
                    T4,
                ),
                row(
                    Kmap,
                    &[("Tuberculosis", "no"), ("LungCancer", "yes"), ("Bronchitis", "yes")],
                    0.0521,
                    T4,
                ),
                noted(
                    row(Ksimp, &[("LungCancer", "yes"), ("Bronchitis", "yes")], 0.9000, T4),
                    "reference label reads (¬LungCancer, ¬Bronchitis), whose likelihood is 0.1",
                ),
                row(Ksimp, &[("Bronchitis", "yes")], 0.8080, T4),
                row(Ksimp, &[("Tuberculosis", "no")], 0.4323, T4),
            ],
            counts: vec![],
        },
        Scenario {
            id: "asia-xray",
            network: "asia",
            evidence: vec![("X_ray", "abnormal")],
            rows: vec![
                row(Kmre, &[("LungCancer", "yes")], 16.4231, T4),
                row(Kmre, &[("Tuberculosis", "yes")], 9.6886, T4),
                row(Kmre, &[("Bronchitis", "yes")], 1.2535, T4),
                row(
                    Kmap,
                    &[("Tuberculosis", "no"), ("LungCancer", "yes"), ("Bronchitis", "yes")],
                    0.0305,
                    T4,
                ),
                noted(
                    row(
                        Kmap,
                        &[("Tuberculosis", "no"), ("LungCancer", "no"), ("Bronchitis", "no")],
                        0.0261,
                        T4,
                    ),
                    "reference label reads (¬LungCancer, ¬Tuberculosis, Bronchitis), whose joint is 0.0207",
                ),
                row(
                    Kmap,
                    &[("Tuberculosis", "no"), ("LungCancer", "yes"), ("Bronchitis", "no")],
                    0.0228,
                    T4,
                ),
                noted(
                    row(Ksimp, &[("LungCancer", "yes")], 0.9800, T4),
                    "reference label reads (¬LungCancer), whose likelihood is 0.0545",
                ),
                row(Ksimp, &[("Tuberculosis", "no")], 0.1012, T4),
            ],
            counts: vec![(Ksimp, 2)],
        },
        Scenario {
            id: "circuit2",
            network: "circuit2",
            evidence: vec![("E", "low"), ("In1", "low"), ("In2", "low")],
            rows: vec![
                row(Kmre, &[("OK3", ab)], 4.0, EXACT),
                row(Kmre, &[("OK1", ab), ("OK2", ab)], 2.0, EXACT),
                row(Kmap, &[("OK1", ab), ("OK2", ab), ("OK3", ab)], 0.125, EXACT),
                row(Kmap, &[("OK1", ab), ("OK2", "ok"), ("OK3", ab)], 0.125, EXACT),
                row(Kmap, &[("OK1", "ok"), ("OK2", ab), ("OK3", ab)], 0.125, EXACT),
                row(Ksimp, &[("OK3", ab)], 1.0, EXACT),
                row(Ksimp, &[("OK1", ab), ("OK2", ab)], 1.0, EXACT),
            ],
            counts: vec![(Kmre, 2), (Ksimp, 2)],
        },
    ]
}

/// Scenario ids matching `id`: a scenario id, a fixture id, or `all`.
pub fn select_scenarios(id: &str) -> Result<Vec<Scenario>, BenchError> {
    let all = scenarios();
    let picked: Vec<Scenario> = all
        .into_iter()
        .filter(|s| id == "all" || s.id == id || s.network == id)
        .collect();
    if picked.is_empty() {
        return Err(BenchError::UnknownScenario(id.to_string()));
    }
    Ok(picked)
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub scenario: String,
    pub method: Method,
    pub rank: usize,
    pub expected_explanation: String,
    pub computed_explanation: Option<String>,
    pub expected_score: f64,
    pub computed_score: Option<f64>,
    pub delta: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub scenario: String,
    pub method: Method,
    pub expected: usize,
    pub computed: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub rows: Vec<RowReport>,
    pub counts: Vec<CountReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass) && self.counts.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass).count()
            + self.counts.iter().filter(|c| !c.pass).count()
    }

    pub fn extend(&mut self, other: Report) {
        self.rows.extend(other.rows);
        self.counts.extend(other.counts);
    }

    /// Aligned text table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let header = [
            "scenario",
            "method",
            "rank",
            "expected",
            "computed",
            "reference",
            "score",
            "delta",
            "result",
        ];
        let mut lines: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
        for r in &self.rows {
            lines.push(vec![
                r.scenario.clone(),
                r.method.to_string(),
                r.rank.to_string(),
                r.expected_explanation.clone(),
                r.computed_explanation.clone().unwrap_or_else(|| "-".into()),
                format!("{}", r.expected_score),
                r.computed_score.map_or("-".into(), |s| format!("{s:.6}")),
                r.delta.map_or("-".into(), |d| format!("{d:.6}")),
                if r.pass { "PASS" } else { "FAIL" }.into(),
            ]);
        }
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                lines
                    .iter()
                    .map(|l| l[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        for l in &lines {
            let cells: Vec<String> = l
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:<w$}", w = *w))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        for c in &self.counts {
            out.push_str(&format!(
                "{} {} row count: expected {}, computed {} {}\n",
                c.scenario,
                c.method,
                c.expected,
                c.computed,
                if c.pass { "PASS" } else { "FAIL" }
            ));
        }
        for r in self.rows.iter().filter(|r| r.note.is_some()) {
            out.push_str(&format!(
                "note: {} {} rank {}: {}\n",
                r.scenario,
                r.method,
                r.rank,
                r.note.as_deref().unwrap_or_default()
            ));
        }
        out
    }
}

fn full_output(
    net: &Network,
    evidence: &Assignment,
    method: Method,
    cfg: &RunConfig,
) -> Result<Vec<ScoredExplanation>, SearchError> {
    Ok(match method {
        // The whole K-MAP ranking, so that ties can be matched in any order.
        Method::Kmap => baselines::k_map(net, evidence, usize::MAX)?,
        m => run_method(net, evidence, m, cfg)?.ranked(),
    })
}

/// Computes the scenario's methods and compares them to the reference rows.
pub fn run_scenario(s: &Scenario) -> Result<Report, BenchError> {
    let net = fixture(s.network)?;
    let bind = |pairs: &[(&str, &str)]| {
        net.assignment(pairs).map_err(|source| BenchError::Binding {
            id: s.id.to_string(),
            source,
        })
    };
    let evidence = bind(&s.evidence)?;
    let cfg = RunConfig::default();
    let mut report = Report::default();
    let mut methods: Vec<Method> = Vec::new();
    for r in &s.rows {
        if !methods.contains(&r.method) {
            methods.push(r.method);
        }
    }
    for method in methods {
        let mut computed = full_output(&net, &evidence, method, &cfg)?;
        if method == Method::Kmap {
            computed.truncate(
                cfg.k
                    .max(s.rows.iter().filter(|r| r.method == method).count()),
            );
        }
        let ties = if method == Method::Kmap {
            baselines::k_map(&net, &evidence, usize::MAX)?
        } else {
            computed.clone()
        };
        for (rank, exp) in s.rows.iter().filter(|r| r.method == method).enumerate() {
            let expected = bind(&exp.explanation)?;
            let got = computed.get(rank);
            let delta = got.map(|g| (g.score - exp.score).abs());
            let label_ok = got.is_some_and(|g| {
                g.explanation == expected
                    || ties
                        .iter()
                        .any(|t| t.explanation == expected && (t.score - g.score).abs() <= 1e-12)
            });
            report.rows.push(RowReport {
                scenario: s.id.to_string(),
                method,
                rank: rank + 1,
                expected_explanation: net.format_assignment(&expected),
                computed_explanation: got.map(|g| net.format_assignment(&g.explanation)),
                expected_score: exp.score,
                computed_score: got.map(|g| g.score),
                delta,
                tolerance: exp.tolerance,
                pass: label_ok && delta.is_some_and(|d| d <= exp.tolerance),
                note: exp.note.map(str::to_string),
            });
        }
        for &(m, n) in s.counts.iter().filter(|(m, _)| *m == method) {
            report.counts.push(CountReport {
                scenario: s.id.to_string(),
                method: m,
                expected: n,
                computed: computed.len(),
                pass: computed.len() == n,
            });
        }
    }
    Ok(report)
}

/// Runs every scenario selected by `id`.
pub fn run(id: &str) -> Result<Report, BenchError> {
    let mut report = Report::default();
    for s in select_scenarios(id)? {
        report.extend(run_scenario(&s)?);
    }
    Ok(report)
}
