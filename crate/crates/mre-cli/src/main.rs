//! `mre` command-line tool: explanation queries, golden benchmarks, GBF
//! curves and network validation.

use clap::{Args, Parser, Subcommand, ValueEnum};
use mre::baselines::BaselineParams;
use mre::bench::{self, Method, MethodOutput, RunConfig};
use mre::kmre::{Exclusion, KmreOptions, KmreResult};
use mre::relevance::{curve_csv, gbf_curve, CurveMode};
use mre::search::{MreOptions, ScoredExplanation};
use mre::{parse_network, Assignment, InferError, Network, Role, SearchError};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_INPUT: u8 = 1;
const EXIT_IMPOSSIBLE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "mre",
    version,
    about = "Most relevant explanations in Bayesian networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Explain evidence with one of the explanation methods.
    Explain(ExplainArgs),
    /// Compare computed results with the reference values of golden scenarios.
    Bench(BenchArgs),
    /// Print GBF as a function of the prior for a fixed belief change.
    Curve(CurveArgs),
    /// Check a network file and report every problem found.
    Validate(Source),
    /// Print a network's variables and roles.
    Show(ShowArgs),
}

#[derive(Args)]
struct Source {
    /// Embedded fixture id, overridable through MRE_FIXTURE_DIR.
    #[arg(long, conflicts_with = "network")]
    fixture: Option<String>,
    /// Path to a network JSON file.
    #[arg(long)]
    network: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct ExplainArgs {
    #[command(flatten)]
    source: Source,
    /// Observed binding VAR=state; repeat for several.
    #[arg(long = "evidence", short = 'e', required = true)]
    evidence: Vec<String>,
    #[arg(long, default_value = "mre", value_parser = parse_method)]
    method: Method,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Minimum average mutual information for explanation tree splits.
    #[arg(long, default_value_t = 0.05)]
    threshold_mi: f64,
    /// Minimum branch probability for explanation tree expansion.
    #[arg(long, default_value_t = 0.0)]
    threshold_branch: f64,
    /// Minimum causal information flow for causal tree splits.
    #[arg(long, default_value_t = 0.01)]
    threshold_flow: f64,
    /// Allowed relative likelihood loss when simplifying MAP solutions.
    #[arg(long, default_value_t = 0.05)]
    simp_factor: f64,
    /// Score every candidate instead of pruning irrelevant ones.
    #[arg(long)]
    no_prune: bool,
    /// K-MRE keeps entries after the first only when their GBF exceeds this.
    #[arg(long, default_value_t = 1.0, conflicts_with = "no_gbf_floor")]
    gbf_floor: f64,
    #[arg(long)]
    no_gbf_floor: bool,
    /// List interchangeable explanations separately in K-MRE.
    #[arg(long)]
    no_collapse: bool,
    /// Also print excluded K-MRE candidates with their dominating witness.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Scenario or fixture ids; all scenarios when omitted.
    ids: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(
        long,
        conflicts_with = "fixed_delta",
        required_unless_present = "fixed_delta"
    )]
    fixed_ratio: Option<f64>,
    #[arg(long)]
    fixed_delta: Option<f64>,
    /// Prior grid as start:end:step.
    #[arg(long, default_value = "0.01:0.49:0.01")]
    grid: String,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ShowArgs {
    #[command(flatten)]
    source: Source,
    /// Print the network as JSON.
    #[arg(long)]
    json: bool,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        let code = match e {
            SearchError::Infer(InferError::ImpossibleEvidence) => EXIT_IMPOSSIBLE,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Explain(a) => explain(&a),
        Command::Bench(a) => run_bench(&a),
        Command::Curve(a) => curve(&a),
        Command::Validate(s) => validate(&s),
        Command::Show(a) => show(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load(source: &Source) -> Result<Network, Failure> {
    let text = match (&source.fixture, &source.network) {
        (Some(id), _) => fixture_text(id)?,
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        (None, None) => return Err(Failure::input("pass --fixture or --network")),
    };
    parse_network(&text).map_err(Failure::input)
}

fn fixture_text(id: &str) -> Result<String, Failure> {
    if let Some(dir) = std::env::var_os("MRE_FIXTURE_DIR") {
        let path = PathBuf::from(dir).join(format!("{id}.json"));
        if path.exists() {
            return std::fs::read_to_string(&path)
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())));
        }
    }
    bench::fixture_text(id)
        .map(str::to_string)
        .ok_or_else(|| Failure::input(format!("unknown fixture `{id}`")))
}

/// Four decimals, or two once the integer part has two or more digits.
fn fmt_score(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else if x.abs() >= 10.0 {
        format!("{x:.2}")
    } else {
        format!("{x:.4}")
    }
}

fn json_number(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(fmt_score(x))
    }
}

fn explain(a: &ExplainArgs) -> Result<(), Failure> {
    let net = load(&a.source)?;
    let evidence = net.parse_bindings(&a.evidence).map_err(Failure::input)?;
    if let Some(v) = evidence
        .vars()
        .into_iter()
        .find(|&v| net.role(v) == Role::Target)
    {
        return Err(Failure::input(format!(
            "evidence on target variable `{}`; targets are what gets explained",
            net.name(v)
        )));
    }
    let cfg = RunConfig {
        k: a.k,
        params: BaselineParams {
            et_mi_threshold: a.threshold_mi,
            et_branch_prob_threshold: a.threshold_branch,
            cet_flow_threshold: a.threshold_flow,
            simp_likelihood_factor: a.simp_factor,
            k: a.k,
        },
        kmre: KmreOptions {
            gbf_floor: (!a.no_gbf_floor).then_some(a.gbf_floor),
            collapse_interchangeable: !a.no_collapse,
        },
        mre: MreOptions { prune: !a.no_prune },
    };
    let output = bench::run_method(&net, &evidence, a.method, &cfg)?;
    let text = match a.format {
        Format::Json => {
            let body = output_json(&net, &evidence, a.method, &output);
            serde_json::to_string_pretty(&body).expect("JSON values serialize") + "\n"
        }
        Format::Table => output_table(&net, &output, a.verbose),
    };
    print!("{text}");
    Ok(())
}

fn bindings_json(net: &Network, a: &Assignment) -> Value {
    Value::Object(
        net.named_bindings(a)
            .into_iter()
            .map(|(k, v)| (k, Value::String(v)))
            .collect(),
    )
}

fn scored_json(net: &Network, s: &ScoredExplanation) -> Value {
    let mut v = json!({
        "explanation": bindings_json(net, &s.explanation),
        "score": json_number(s.score),
        "kind": s.kind,
    });
    if let Some(strength) = s.strength {
        v["strength"] = json!(strength.to_string());
    }
    if let Some(p) = s.prior {
        v["prior"] = json!(p);
    }
    if let Some(p) = s.posterior {
        v["posterior"] = json!(p);
    }
    v
}

fn output_json(net: &Network, evidence: &Assignment, method: Method, out: &MethodOutput) -> Value {
    let results = match out {
        MethodOutput::Ranked(list) => {
            Value::Array(list.iter().map(|s| scored_json(net, s)).collect())
        }
        MethodOutput::Kmre(res) => Value::Array(
            res.selected
                .iter()
                .map(|e| {
                    let mut v = scored_json(net, &e.explanation);
                    v["equivalents"] = json!(e.equivalents);
                    v
                })
                .collect(),
        ),
        MethodOutput::Tree(tree) => tree.to_json(net),
    };
    json!({
        "method": method.as_str(),
        "evidence": bindings_json(net, evidence),
        "results": results,
    })
}

fn output_table(net: &Network, out: &MethodOutput, verbose: bool) -> String {
    match out {
        MethodOutput::Ranked(list) => ranked_table(net, list, &[]),
        MethodOutput::Kmre(res) => {
            let counts: Vec<usize> = res.selected.iter().map(|e| e.equivalents).collect();
            let mut text = ranked_table(net, &out.ranked(), &counts);
            if verbose {
                text.push_str(&exclusions(net, res));
            }
            text
        }
        MethodOutput::Tree(tree) => tree.to_text(net),
    }
}

fn ranked_table(net: &Network, list: &[ScoredExplanation], equivalents: &[usize]) -> String {
    let mut rows = vec![vec![
        "rank".to_string(),
        "explanation".to_string(),
        "score".to_string(),
        "strength".to_string(),
    ]];
    for (i, s) in list.iter().enumerate() {
        let mut label = net.format_assignment(&s.explanation);
        if let Some(&n) = equivalents.get(i).filter(|&&n| n > 1) {
            label.push_str(&format!(" x{n}"));
        }
        rows.push(vec![
            (i + 1).to_string(),
            label,
            fmt_score(s.score),
            s.strength.map(|x| x.to_string()).unwrap_or_default(),
        ]);
    }
    let widths: Vec<usize> = (0..4)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}", w = *w))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn exclusions(net: &Network, res: &KmreResult) -> String {
    let mut out = String::new();
    for x in res
        .excluded
        .iter()
        .filter(|x| !matches!(x.reason, Exclusion::Equivalent { .. }))
    {
        let who = net.format_assignment(&x.candidate.explanation);
        let score = fmt_score(x.candidate.score);
        let why = match &x.reason {
            Exclusion::Dominated { by, relation } => format!(
                "dominated ({}) by {}",
                serde_json::to_value(relation)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
                net.format_assignment(by)
            ),
            Exclusion::Equivalent { to } => format!("equivalent to {}", net.format_assignment(to)),
            Exclusion::BelowFloor => "not above the GBF floor".to_string(),
        };
        out.push_str(&format!("excluded {who} {score}: {why}\n"));
    }
    out
}

fn run_bench(a: &BenchArgs) -> Result<(), Failure> {
    let ids = if a.ids.is_empty() {
        vec!["all".to_string()]
    } else {
        a.ids.clone()
    };
    let mut report = bench::Report::default();
    for id in &ids {
        report.extend(bench::run(id).map_err(Failure::input)?);
    }
    match a.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("reports serialize")
        ),
        Format::Table => print!("{}", report.to_text()),
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_MISMATCH,
            message: format!("{} mismatches", report.failures()),
        })
    }
}

fn parse_grid(text: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<f64> = text
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::input(format!("grid `{text}`: {e}")))?;
    let [start, end, step] = parts[..] else {
        return Err(Failure::input(format!(
            "grid `{text}` must be start:end:step"
        )));
    };
    if step.is_nan() || step <= 0.0 || end < start {
        return Err(Failure::input(format!("grid `{text}` is empty")));
    }
    let n = ((end - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}

fn curve(a: &CurveArgs) -> Result<(), Failure> {
    let mode = match (a.fixed_ratio, a.fixed_delta) {
        (Some(r), _) => CurveMode::FixedRatio(r),
        (None, Some(d)) => CurveMode::FixedDelta(d),
        (None, None) => return Err(Failure::input("pass --fixed-ratio or --fixed-delta")),
    };
    let points = gbf_curve(&parse_grid(&a.grid)?, mode).map_err(Failure::input)?;
    let csv = curve_csv(&points);
    match &a.out {
        Some(path) => std::fs::write(path, csv)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn validate(source: &Source) -> Result<(), Failure> {
    let net = load(source)?;
    println!(
        "ok: {} variables, {} targets",
        net.len(),
        net.targets().len()
    );
    Ok(())
}

fn show(a: &ShowArgs) -> Result<(), Failure> {
    let net = load(&a.source)?;
    if a.json {
        println!("{}", mre::model::serialize_network(&net));
        return Ok(());
    }
    for (id, v) in net.variables().iter().enumerate() {
        let parents: Vec<&str> = net.parents(id).iter().map(|&p| net.name(p)).collect();
        println!(
            "{} [{}] {:?} parents: {}",
            v.name,
            v.states.join(", "),
            v.role,
            if parents.is_empty() {
                "-".to_string()
            } else {
                parents.join(", ")
            }
        );
    }
    Ok(())
}
