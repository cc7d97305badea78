//! `wallcross`: build bodies and weight matrices, cross walls, run the
//! verification sweeps and recompute the worked examples.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check
//! fails, 2 for usage or input errors.

mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use tropwall::gr2m::{build_m, build_mtilde, nohara_ueda, GrPair};
use tropwall::kernel::{RatMat, RatVec};
use tropwall::mutation::{body_from_triple, mutation_frame, worked_eta, worked_shear, worked_triple, PLTriple};
use tropwall::trees::{enumerate_trees, TrivalentTree};
use tropwall::wallcross::{crossing_data, no_body, verify_counterexample, verify_gr2m, ConePairInput, Mode};
use tropwall::Error;

const DEFAULT_MAX_M: usize = 7;

#[derive(Parser)]
#[command(name = "wallcross", version, about = "Exact wall-crossing for Newton-Okounkov bodies")]
struct Cli {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print checks as a PASS/FAIL table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List all trivalent trees on m leaves.
    Trees {
        #[arg(long)]
        m: usize,
    },
    /// Weight matrices and Nohara-Ueda inequalities of one tree.
    Matrices(MatricesArgs),
    /// Vertices and facets of the body of a weight matrix.
    Body(BodyArgs),
    /// Apply flip, shift or Theta across the wall between two trees.
    Crossing(CrossingArgs),
    /// Sweep all adjacent tree pairs on m leaves.
    Verify(VerifyArgs),
    /// Crossing report for two weight matrices.
    Run(RunArgs),
    /// The hypersurface example where Theta is not geometric.
    Counterexample,
    /// Dual cones and slices for a triple of concave functions.
    Mutate(MutateArgs),
    /// Recompute a worked example and compare with its printed values.
    Reproduce {
        #[arg(value_enum)]
        item: reproduce::Item,
    },
    /// Grassmannian-specific commands.
    #[command(subcommand)]
    Gr2m(Gr2mCmd),
}

#[derive(Subcommand)]
enum Gr2mCmd {
    Matrices(MatricesArgs),
    Crossing(CrossingArgs),
    Verify(VerifyArgs),
}

#[derive(Args)]
struct MatricesArgs {
    #[arg(long)]
    m: usize,
    /// One interior split as comma-separated leaves; repeat for each split.
    #[arg(long = "split")]
    splits: Vec<String>,
    /// Tree as JSON (inline or a file), instead of --m/--split.
    #[arg(long, conflicts_with = "splits")]
    tree: Option<String>,
}

#[derive(Args)]
struct BodyArgs {
    /// Weight matrix as JSON rows (inline or a file).
    #[arg(long, conflicts_with = "example")]
    matrix: Option<String>,
    #[arg(long, value_enum)]
    example: Option<BodyExample>,
    /// Which body of an example pair.
    #[arg(long, default_value_t = 1)]
    side: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum BodyExample {
    #[value(name = "hypersurface-11")]
    Hypersurface11,
    Appendix,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    Flip,
    Shift,
    Theta,
}

#[derive(Args)]
struct CrossingArgs {
    /// `{"t1": tree, "t2": tree}` (inline or a file).
    #[arg(long)]
    pair: String,
    #[arg(long, value_enum)]
    map: MapKind,
    /// Point of the first cone (inline JSON or a file).
    #[arg(long)]
    point: String,
    /// Exponent with `M1 alpha = point`; required for theta.
    #[arg(long)]
    alpha: Option<String>,
    /// Relabel the leaves into the common Groebner cone first.
    #[arg(long)]
    relabel: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliMode {
    Exact,
    Sample,
}

impl From<CliMode> for Mode {
    fn from(m: CliMode) -> Mode {
        match m {
            CliMode::Exact => Mode::Exact,
            CliMode::Sample => Mode::Sample,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 3)]
    degree: u32,
    /// Defaults to exact for m <= 5 and sample above.
    #[arg(long, value_enum)]
    mode: Option<CliMode>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, requires = "m2", conflicts_with = "example")]
    m1: Option<String>,
    #[arg(long, requires = "m1")]
    m2: Option<String>,
    #[arg(long, value_enum)]
    example: Option<RunExample>,
    #[arg(long, value_enum, default_value = "exact")]
    mode: CliMode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum RunExample {
    #[value(name = "hypersurface-11")]
    Hypersurface11,
}

#[derive(Args)]
struct MutateArgs {
    /// Triple JSON (inline or a file).
    #[arg(long, conflicts_with = "example")]
    triple: Option<String>,
    #[arg(long)]
    eta: Option<String>,
    /// Built-in worked example, sheared so that an admissible eta exists.
    #[arg(long, value_enum)]
    example: Option<MutateExample>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutateExample {
    Appendix,
}

#[derive(Deserialize)]
struct PairJson {
    t1: TrivalentTree,
    t2: TrivalentTree,
}

enum Failure {
    Usage(String),
    Check(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::TheoremViolation { what, witness } => Failure::Check(json!({
                "passed": false,
                "error": "theorem violated",
                "what": what,
                "witness": witness,
            })),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// A report and whether all of its checks passed.
struct Outcome {
    report: Value,
    passed: bool,
}

impl Outcome {
    fn ok(v: impl Serialize) -> Result<Outcome, Failure> {
        Ok(Outcome { report: to_value(v)?, passed: true })
    }

    fn checked(v: impl Serialize, passed: bool) -> Result<Outcome, Failure> {
        Ok(Outcome { report: to_value(v)?, passed })
    }
}

fn to_value(v: impl Serialize) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(|e| Failure::Usage(e.to_string()))
}

/// Parse JSON given inline or as a path to a file.
fn load<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, Failure> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("cannot read {what} from {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("bad {what}: {e}")))
}

fn max_m() -> Result<usize, Failure> {
    match std::env::var("WALLCROSS_MAX_M") {
        Ok(s) => s.parse().map_err(|_| Failure::Usage(format!("WALLCROSS_MAX_M={s} is not a number"))),
        Err(_) => Ok(DEFAULT_MAX_M),
    }
}

fn guard_m(m: usize) -> Result<(), Failure> {
    let max = max_m()?;
    if m < 4 || m > max {
        return Err(Failure::Usage(format!("m = {m} is outside 4..={max}; set WALLCROSS_MAX_M to raise the limit")));
    }
    Ok(())
}

fn matrices(a: &MatricesArgs) -> Result<Outcome, Failure> {
    let t: TrivalentTree = match &a.tree {
        Some(s) => load(s, "tree")?,
        None => {
            let splits: Vec<Vec<usize>> = a
                .splits
                .iter()
                .map(|s| {
                    s.split_whitespace()
                        .flat_map(|w| w.split(','))
                        .filter(|w| !w.is_empty())
                        .map(|w| w.parse::<usize>().map_err(|_| Failure::Usage(format!("bad leaf {w:?}"))))
                        .collect()
                })
                .collect::<Result<_, _>>()?;
            TrivalentTree::new(a.m, &regroup(a.m, splits)?)?
        }
    };
    let nu = nohara_ueda(&t);
    Outcome::ok(json!({
        "tree": t,
        "m_tau": build_m(&t),
        "m_tilde": build_mtilde(&t),
        "nohara_ueda": { "inequalities": nu.inequalities, "level": nu.level },
    }))
}

/// Each `--split` occurrence is one split.
fn regroup(m: usize, parts: Vec<Vec<usize>>) -> Result<Vec<Vec<usize>>, Failure> {
    let out: Vec<Vec<usize>> = parts.into_iter().filter(|p| !p.is_empty()).collect();
    if out.len() + 3 != m {
        return Err(Failure::Usage(format!("a tree on {m} leaves needs {} splits, got {}", m - 3, out.len())));
    }
    Ok(out)
}

fn body(a: &BodyArgs) -> Result<Outcome, Failure> {
    let p = match (&a.matrix, a.example) {
        (Some(s), _) => no_body(&load::<RatMat>(s, "matrix")?)?,
        (None, Some(BodyExample::Hypersurface11)) => {
            let inp = ConePairInput::hypersurface_11();
            no_body(if a.side == 2 { &inp.m2 } else { &inp.m1 })?
        }
        (None, Some(BodyExample::Appendix)) => body_from_triple(&worked_triple(), a.side)?,
        (None, None) => return Err(Failure::Usage("give --matrix or --example".into())),
    };
    let p = p.dd_convert();
    Outcome::ok(json!({ "body": p, "vertex_count": p.vertices().len() }))
}

fn crossing(a: &CrossingArgs) -> Result<Outcome, Failure> {
    let pair: PairJson = load(&a.pair, "tree pair")?;
    let (gp, perm) = if a.relabel {
        let (g, p) = GrPair::relabeled(&pair.t1, &pair.t2)?;
        (g, Some(p))
    } else {
        (GrPair::new(&pair.t1, &pair.t2)?, None)
    };
    let point: RatVec = load(&a.point, "point")?;
    let (name, image) = match a.map {
        MapKind::Flip => ("flip", gp.flip(&point)?),
        MapKind::Shift => ("shift", gp.shift(&point)?),
        MapKind::Theta => {
            let Some(s) = &a.alpha else {
                return Err(Failure::Usage("theta needs --alpha with M1 alpha = point".into()));
            };
            let alpha: Vec<u32> = load(s, "exponent")?;
            ("theta", gp.theta(&point, &alpha)?)
        }
    };
    Outcome::ok(json!({
        "t1": gp.adj.t1,
        "t2": gp.adj.t2,
        "permutation": perm,
        "map": name,
        "point": point,
        "image": image,
    }))
}

fn verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    guard_m(a.m)?;
    let mode = a.mode.map(Mode::from).unwrap_or(if a.m <= 5 { Mode::Exact } else { Mode::Sample });
    let r = verify_gr2m(a.m, a.degree, mode, a.seed)?;
    let passed = r.passed();
    let checked: usize = r.results.iter().map(|p| p.flip_theta_checked).sum();
    let points: usize = r.results.iter().map(|p| p.points_checked).sum();
    let failures: Vec<Value> = r
        .results
        .iter()
        .filter(|p| !p.failures.is_empty() || !p.flip_theta_violations.is_empty())
        .map(|p| json!(p))
        .collect();
    Outcome::checked(
        json!({
            "m": r.m,
            "degree": r.degree,
            "mode": r.mode,
            "seed": r.seed,
            "pairs": r.pairs,
            "fiber_points_checked": points,
            "checked": checked,
            "passed": passed,
            "violations": failures,
        }),
        passed,
    )
}

fn run(a: &RunArgs) -> Result<Outcome, Failure> {
    let inp = match (&a.m1, &a.m2, a.example) {
        (Some(x), Some(y), _) => {
            let inp = ConePairInput { m1: load(x, "matrix")?, m2: load(y, "matrix")?, labels: None };
            inp.validate()?;
            inp
        }
        (_, _, Some(RunExample::Hypersurface11)) => ConePairInput::hypersurface_11(),
        _ => return Err(Failure::Usage("give --m1 and --m2, or --example".into())),
    };
    let r = crossing_data(&inp, a.mode.into(), a.seed)?;
    let passed = r.passed();
    Outcome::checked(&r, passed)
}

fn mutate(a: &MutateArgs) -> Result<Outcome, Failure> {
    let (t, eta): (PLTriple, RatVec) = match (&a.triple, a.example) {
        (Some(s), _) => {
            let t = load(s, "triple")?;
            let Some(e) = &a.eta else {
                return Err(Failure::Usage("--triple needs --eta".into()));
            };
            (t, load(e, "eta")?)
        }
        (None, Some(MutateExample::Appendix)) => {
            let (l1, l2) = worked_shear();
            let eta = match &a.eta {
                Some(e) => load(e, "eta")?,
                None => worked_eta(),
            };
            (worked_triple().sheared(&l1, &l2)?, eta)
        }
        (None, None) => return Err(Failure::Usage("give --triple or --example".into())),
    };
    let frame = mutation_frame(&t, &eta)?;
    let b1 = body_from_triple(&t, 1)?;
    let b2 = body_from_triple(&t, 2)?;
    Outcome::ok(json!({
        "eta": eta,
        "body1": b1,
        "body2": b2,
        "d1_vertices": frame.d1.vertices(),
        "d2_vertices": frame.d2.vertices(),
        "frame": frame,
    }))
}

fn dispatch(cmd: &Cmd) -> Result<Outcome, Failure> {
    match cmd {
        Cmd::Trees { m } => {
            guard_m(*m)?;
            let trees = enumerate_trees(*m)?;
            Outcome::ok(json!({ "m": m, "count": trees.len(), "trees": trees }))
        }
        Cmd::Matrices(a) | Cmd::Gr2m(Gr2mCmd::Matrices(a)) => matrices(a),
        Cmd::Body(a) => body(a),
        Cmd::Crossing(a) | Cmd::Gr2m(Gr2mCmd::Crossing(a)) => crossing(a),
        Cmd::Verify(a) | Cmd::Gr2m(Gr2mCmd::Verify(a)) => verify(a),
        Cmd::Run(a) => run(a),
        Cmd::Counterexample => {
            let r = verify_counterexample()?;
            let passed = r.passed();
            Outcome::checked(&r, passed)
        }
        Cmd::Mutate(a) => mutate(a),
        Cmd::Reproduce { item } => {
            let r = reproduce::run(*item)?;
            let passed = r.passed;
            Outcome::checked(&r, passed)
        }
    }
}

/// One line per check or assertion found in the report.
fn table(v: &Value) -> String {
    let mut out = String::new();
    for key in ["checks", "assertions"] {
        if let Some(rows) = v.get(key).and_then(Value::as_array) {
            for r in rows {
                let ok = r.get("passed").and_then(Value::as_bool).unwrap_or(false);
                let name = r.get("name").and_then(Value::as_str).unwrap_or("?");
                out.push_str(&format!("{} {name}\n", if ok { "PASS" } else { "FAIL" }));
            }
        }
    }
    if out.is_empty() {
        let ok = v.get("passed").and_then(Value::as_bool).unwrap_or(true);
        out.push_str(if ok { "PASS\n" } else { "FAIL\n" });
    }
    out
}

fn emit(cli: &Cli, v: &Value) -> Result<(), String> {
    let text = if cli.table {
        table(v)
    } else {
        let mut s = serde_json::to_string_pretty(v).map_err(|e| e.to_string())?;
        s.push('\n');
        s
    };
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, code) = match dispatch(&cli.cmd) {
        Ok(o) => {
            let code = if o.passed { 0 } else { 1 };
            (o.report, code)
        }
        Err(Failure::Check(v)) => (v, 1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &value) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
