//! `sl3char`: trace reduction, coordinates and checks on the `SL(3, C)`
//! character variety of the free group of rank two.
//!
//! Exit codes: 0 success, 1 malformed input or usage, 2 a failed check,
//! 3 a matrix whose determinant is not one.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use sl3char::io::{
    approx_point_to_json, complex_to_json, exact_point_to_json, pair_to_json, parse_input, split_json_stream, AnyPoint,
    Input, IoError,
};
use sl3char::linalg::{trace_of_word, LinalgError};
use sl3char::rewrite::{reduce_trace_logged, TraceReducer};
use sl3char::sample::{exact_pair_from, sample, trial_rng, Family, Sample};
use sl3char::symmetry::{act_on_point, verify_group_structure, verify_symmetrizer, DihedralElement};
use sl3char::variety::{chi, fiber_over, is_branching, is_singular, on_surface, surface_residual};
use sl3char::verify::{run_suite, Suite, VerifyConfig};
use sl3char::Word;

#[derive(Parser)]
#[command(name = "sl3char", version, about = "Trace coordinates on the SL(3,C) character variety of F2")]
struct Cli {
    /// Master seed for every randomized command.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Number of trials or samples.
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Tolerance for floating point comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Machine readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce the trace of a word to a polynomial in the nine coordinates.
    Reduce {
        word: String,
        /// Compare against exact traces on N random pairs.
        #[arg(long, value_name = "N")]
        check: Option<u64>,
        /// Print every rewrite step as a JSON line.
        #[arg(long)]
        trace: bool,
    },
    /// Coordinates of a pair (or a stream of pairs).
    Chi {
        input: Option<PathBuf>,
        /// Include the residual of the defining relation.
        #[arg(long)]
        residual: bool,
    },
    /// Residual of the defining relation at pairs or points.
    CheckSurface { input: Option<PathBuf> },
    /// The two values of t(5) over the first eight coordinates of each point.
    Fiber { input: Option<PathBuf> },
    /// Whether each pair or point lies on the singular locus.
    Singular { input: Option<PathBuf> },
    /// Apply a dihedral symmetry to points, or check the group structure.
    Symmetry {
        /// Element such as `tau*iota`.
        #[arg(long, required_unless_present = "verify", conflicts_with = "verify")]
        element: Option<DihedralElement>,
        #[arg(long)]
        verify: bool,
        input: Option<PathBuf>,
    },
    /// Random pairs (or points, for `branching`) from a family, one JSON value per line.
    Sample {
        #[arg(long, default_value = "generic")]
        family: Family,
    },
    /// Run a verification suite.
    Verify { suite: Suite },
}

enum Failure {
    Input(String),
    Check(String),
    Determinant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Check(_) => 2,
            Failure::Determinant(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Check(m) | Failure::Determinant(m) => m,
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Linalg(e @ LinalgError::NotUnimodular { .. }) => Failure::Determinant(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn read_inputs(path: &Option<PathBuf>) -> Result<Vec<Input>, Failure> {
    let text = read_input(path)?;
    let items = split_json_stream(&text)?;
    if items.is_empty() {
        return Err(Failure::Input("no input".into()));
    }
    items.iter().map(|s| parse_input(s).map_err(Failure::from)).collect()
}

fn to_point(input: Input) -> AnyPoint {
    match input {
        Input::Pair(pair) => AnyPoint::Exact(chi(&pair)),
        Input::Point(p) => p,
    }
}

fn emit(out: &mut impl Write, line: impl std::fmt::Display) -> Outcome {
    writeln!(out, "{line}")?;
    Ok(())
}

fn cmd_reduce(cli: &Cli, word: &str, check: Option<u64>, trace: bool) -> Outcome {
    let w: Word = word.parse().map_err(|e| Failure::Input(format!("cannot parse {word:?}: {e}")))?;
    let (poly, steps) = if trace {
        let (p, t) = reduce_trace_logged(&w).map_err(|e| Failure::Check(e.to_string()))?;
        (p, Some(t))
    } else {
        (TraceReducer::new().try_reduce(&w).map_err(|e| Failure::Check(e.to_string()))?, None)
    };

    let mut agree = 0;
    let mut mismatch = None;
    if let Some(n) = check {
        for i in 0..n {
            let pair = exact_pair_from(&mut trial_rng(cli.seed, i), Family::Generic).expect("exact family");
            if poly.eval(&chi(&pair).coords) == trace_of_word(&w, &pair) {
                agree += 1;
            } else if mismatch.is_none() {
                mismatch = Some(i);
            }
        }
    }

    let mut out = io::stdout().lock();
    if cli.json {
        let mut obj = Map::new();
        obj.insert("word".into(), json!(w.to_string()));
        obj.insert("polynomial".into(), json!(poly.to_string()));
        if let Some(n) = check {
            obj.insert("check".into(), json!({ "seed": cli.seed, "pairs": n, "agree": agree, "passed": mismatch.is_none() }));
        }
        if let Some(t) = &steps {
            let lines: Vec<Value> =
                t.to_json_lines().lines().map(|l| serde_json::from_str(l).expect("trace lines are JSON")).collect();
            obj.insert("trace".into(), Value::Array(lines));
        }
        emit(&mut out, Value::Object(obj))?;
    } else {
        emit(&mut out, &poly)?;
        if let Some(t) = &steps {
            write!(out, "{}", t.to_json_lines())?;
        }
        if let Some(n) = check {
            let status = if mismatch.is_none() { "pass" } else { "FAIL" };
            emit(&mut out, format!("check: {status} ({agree}/{n} pairs agree, seed {})", cli.seed))?;
        }
    }
    match mismatch {
        Some(i) => Err(Failure::Check(format!("trace mismatch on pair {i} (seed {})", cli.seed))),
        None => Ok(()),
    }
}

fn cmd_chi(input: &Option<PathBuf>, residual: bool) -> Outcome {
    let text = read_input(input)?;
    let items = split_json_stream(&text)?;
    if items.is_empty() {
        return Err(Failure::Input("no input".into()));
    }
    let mut out = io::stdout().lock();
    for item in items {
        let Input::Pair(pair) = parse_input(&item)? else {
            return Err(Failure::Input("expected a pair {\"A\": ..., \"B\": ...}".into()));
        };
        let pt = chi(&pair);
        let mut value = exact_point_to_json(&pt);
        if residual {
            value["residual"] = json!(surface_residual(&pt).to_string());
        }
        emit(&mut out, value)?;
    }
    Ok(())
}

fn residual_json(pt: &AnyPoint) -> Value {
    match pt {
        AnyPoint::Exact(p) => json!(surface_residual(p).to_string()),
        AnyPoint::Approx(p) => complex_to_json(surface_residual(p)),
    }
}

fn cmd_check_surface(cli: &Cli, input: &Option<PathBuf>) -> Outcome {
    let mut out = io::stdout().lock();
    let mut off = 0;
    for (i, item) in read_inputs(input)?.into_iter().enumerate() {
        let pt = to_point(item);
        let ok = match &pt {
            AnyPoint::Exact(p) => on_surface(p, cli.tolerance),
            AnyPoint::Approx(p) => on_surface(p, cli.tolerance),
        };
        off += usize::from(!ok);
        if cli.json {
            emit(&mut out, json!({ "index": i, "residual": residual_json(&pt), "on_surface": ok }))?;
        } else {
            emit(&mut out, format!("{i}: {} (residual {})", if ok { "on surface" } else { "OFF SURFACE" }, residual_json(&pt)))?;
        }
    }
    if off > 0 {
        return Err(Failure::Check(format!("{off} input(s) off the surface")));
    }
    Ok(())
}

fn cmd_fiber(cli: &Cli, input: &Option<PathBuf>) -> Outcome {
    let mut out = io::stdout().lock();
    for (i, item) in read_inputs(input)?.into_iter().enumerate() {
        let pt = to_point(item);
        let branching = match &pt {
            AnyPoint::Exact(p) => is_branching(p, cli.tolerance),
            AnyPoint::Approx(p) => is_branching(p, cli.tolerance),
        };
        let (r1, r2) = fiber_over(&pt.to_approx().base());
        if cli.json {
            emit(&mut out, json!({ "index": i, "roots": [complex_to_json(r1), complex_to_json(r2)], "branching": branching }))?;
        } else {
            let kind = if branching { "double root" } else { "two roots" };
            emit(&mut out, format!("{i}: {kind}: {r1}, {r2}"))?;
        }
    }
    Ok(())
}

fn cmd_singular(cli: &Cli, input: &Option<PathBuf>) -> Outcome {
    let mut out = io::stdout().lock();
    let mut off = 0;
    for (i, item) in read_inputs(input)?.into_iter().enumerate() {
        let result = match to_point(item) {
            AnyPoint::Exact(p) => is_singular(&p, cli.tolerance),
            AnyPoint::Approx(p) => is_singular(&p, cli.tolerance),
        };
        match result {
            Ok(s) if cli.json => emit(&mut out, json!({ "index": i, "singular": s }))?,
            Ok(s) => emit(&mut out, format!("{i}: {}", if s { "singular" } else { "nonsingular" }))?,
            Err(e) => {
                off += 1;
                if cli.json {
                    emit(&mut out, json!({ "index": i, "error": e.to_string() }))?;
                } else {
                    emit(&mut out, format!("{i}: error: {e}"))?;
                }
            }
        }
    }
    if off > 0 {
        return Err(Failure::Check(format!("{off} input(s) off the surface")));
    }
    Ok(())
}

fn cmd_symmetry(cli: &Cli, element: Option<DihedralElement>, verify: bool, input: &Option<PathBuf>) -> Outcome {
    let mut out = io::stdout().lock();
    if verify {
        let report = verify_group_structure();
        let (p_ok, q_ok) = verify_symmetrizer();
        let mut checks: Vec<(String, bool)> = report.checks.iter().map(|c| (c.name.clone(), c.passed)).collect();
        checks.push(("symmetrizer_p".into(), p_ok));
        checks.push(("symmetrizer_q".into(), q_ok));
        let passed = checks.iter().all(|(_, ok)| *ok);
        if cli.json {
            let list: Vec<Value> = checks.iter().map(|(n, ok)| json!({ "name": n, "passed": ok })).collect();
            emit(&mut out, serde_json::to_string_pretty(&json!({ "passed": passed, "checks": list })).expect("json"))?;
        } else {
            for (name, ok) in &checks {
                emit(&mut out, format!("{} {name}", if *ok { "PASS" } else { "FAIL" }))?;
            }
        }
        return if passed { Ok(()) } else { Err(Failure::Check("symmetry checks failed".into())) };
    }
    let g = element.expect("clap requires --element without --verify");
    for item in read_inputs(input)? {
        let value = match to_point(item) {
            AnyPoint::Exact(p) => exact_point_to_json(&act_on_point(g, &p)),
            AnyPoint::Approx(p) => approx_point_to_json(&act_on_point(g, &p)),
        };
        emit(&mut out, value)?;
    }
    Ok(())
}

fn cmd_sample(cli: &Cli, family: Family) -> Outcome {
    let mut out = io::stdout().lock();
    for i in 0..cli.trials {
        let value = match sample(cli.seed, i, family) {
            Sample::Exact(pair) => pair_to_json(&pair),
            Sample::Branching { sample, .. } => approx_point_to_json(&sample.point),
        };
        emit(&mut out, value)?;
    }
    Ok(())
}

fn cmd_verify(cli: &Cli, suite: Suite) -> Outcome {
    let cfg = VerifyConfig { seed: cli.seed, trials: cli.trials as usize, tolerance: cli.tolerance };
    let report = run_suite(suite, &cfg);
    let mut out = io::stdout().lock();
    if cli.json {
        emit(&mut out, serde_json::to_string_pretty(&report).expect("reports serialize"))?;
    } else {
        write!(out, "{}", report.to_text())?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Check(format!("suite {suite} failed")))
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Reduce { word, check, trace } => cmd_reduce(cli, word, *check, *trace),
        Command::Chi { input, residual } => cmd_chi(input, *residual),
        Command::CheckSurface { input } => cmd_check_surface(cli, input),
        Command::Fiber { input } => cmd_fiber(cli, input),
        Command::Singular { input } => cmd_singular(cli, input),
        Command::Symmetry { element, verify, input } => cmd_symmetry(cli, *element, *verify, input),
        Command::Sample { family } => cmd_sample(cli, *family),
        Command::Verify { suite } => cmd_verify(cli, *suite),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
