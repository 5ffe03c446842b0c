//! Batch front-end over the tower, logic, and lab modules.
//!
//! Exit status: 0 on success, 1 when a lab suite reports failures, 2 on
//! usage, parse, or engine errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hamel::lab::{run_suite, SuiteConfig};
use hamel::linear::{Bound, Point, Vector};
use hamel::logic::{decide_sentence, holds, parse_formula, print_formula, qe, Assignment};
use hamel::tower::{parse_expr, parse_model, parse_point, render_expr, render_model, Model};

#[derive(Parser)]
#[command(name = "hamel", about = "Exact engine for finitely presented Hamel spaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect model files.
    #[command(subcommand)]
    Model(ModelCmd),
    /// Evaluate a formula in a model under an assignment.
    Eval {
        /// Model file to evaluate in.
        model: PathBuf,
        /// Formula to evaluate.
        #[arg(short = 'e', long = "expr")]
        formula: String,
        /// Bindings `name = expr`, comma separated; repeatable.
        #[arg(long = "assign", allow_hyphen_values = true)]
        assign: Vec<String>,
    },
    /// Eliminate quantifiers from a formula.
    Qe {
        /// Number of orders the formula may mention.
        #[arg(short = 'k', long = "orders", default_value_t = 2)]
        orders: usize,
        /// Formula to eliminate.
        #[arg(short = 'e', long = "expr")]
        formula: String,
    },
    /// Decide a sentence of the order reduct.
    Decide {
        /// Number of orders the sentence may mention.
        #[arg(short = 'k', long = "orders", default_value_t = 2)]
        orders: usize,
        /// Sentence to decide.
        #[arg(short = 'e', long = "expr")]
        formula: String,
    },
    /// Extend a model by a constructed witness.
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Separated basis and value set of the span of given elements.
    Values {
        /// Model file the elements live in.
        model: PathBuf,
        /// Elements spanning the subspace, comma separated.
        #[arg(short = 'e', long = "expr", allow_hyphen_values = true)]
        exprs: String,
    },
    /// Run randomized property suites.
    #[command(subcommand)]
    Lab(LabCmd),
}

#[derive(Subcommand)]
enum ModelCmd {
    /// Load a model file and report its shape.
    Check {
        /// Model file to load.
        model: PathBuf,
    },
}

#[derive(Subcommand)]
enum WitnessCmd {
    /// A fresh value strictly inside a first-order interval (a, b).
    Density {
        #[command(flatten)]
        io: WitnessIo,
        /// Lower endpoint, an element expression.
        #[arg(allow_hyphen_values = true)]
        lo: String,
        /// Upper endpoint, an element expression.
        #[arg(allow_hyphen_values = true)]
        hi: String,
    },
    /// An element inside one open interval per order; `-inf`/`+inf`
    /// leave an end unbounded.
    Independence {
        #[command(flatten)]
        io: WitnessIo,
        #[command(flatten)]
        intervals: Intervals,
    },
    /// Like independence, but the witness avoids the value set.
    Nonvalue {
        #[command(flatten)]
        io: WitnessIo,
        #[command(flatten)]
        intervals: Intervals,
    },
    /// A positive-value element strictly inside a first-order interval.
    Densepair {
        #[command(flatten)]
        io: WitnessIo,
        /// Lower endpoint, an element expression.
        #[arg(allow_hyphen_values = true)]
        lo: String,
        /// Upper endpoint, an element expression.
        #[arg(allow_hyphen_values = true)]
        hi: String,
    },
}

#[derive(Args)]
struct WitnessIo {
    /// Model file to extend.
    model: PathBuf,
    /// Where to write the extended model.
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

/// One open interval per order; `-inf`/`+inf` leave an end unbounded.
#[derive(Args)]
struct Intervals {
    /// First-order lower endpoint.
    #[arg(allow_hyphen_values = true)]
    lo0: String,
    /// First-order upper endpoint.
    #[arg(allow_hyphen_values = true)]
    hi0: String,
    /// Second-order lower endpoint.
    #[arg(allow_hyphen_values = true)]
    lo1: String,
    /// Second-order upper endpoint.
    #[arg(allow_hyphen_values = true)]
    hi1: String,
}

#[derive(Subcommand)]
enum LabCmd {
    /// Run one suite and print its report.
    Run {
        /// Suite name: axioms, value-independence, value-growth,
        /// insertion, trichotomy, pairs, or qe.
        suite: String,
        /// Number of trials.
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Random seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the line-oriented machine report.
        #[arg(long)]
        machine: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Model(ModelCmd::Check { model }) => {
            let m = load_model(&model)?;
            println!("{}", m.describe());
        }
        Cmd::Eval { model, formula, assign } => {
            let m = load_model(&model)?;
            let f = parse_formula(&formula).map_err(|e| format!("in formula: {e}"))?;
            let sigma = parse_bindings(&m, &assign)?;
            let verdict = holds(&m, &f, &sigma)
                .map_err(|e| format!("evaluating in {}: {e}", model.display()))?;
            println!("{verdict}");
        }
        Cmd::Qe { orders, formula } => {
            let f = parse_formula(&formula).map_err(|e| format!("in formula: {e}"))?;
            let eliminated = qe(&f, orders).map_err(|e| e.to_string())?;
            println!("{}", print_formula(&eliminated));
        }
        Cmd::Decide { orders, formula } => {
            let f = parse_formula(&formula).map_err(|e| format!("in formula: {e}"))?;
            let verdict = decide_sentence(&f, orders).map_err(|e| e.to_string())?;
            println!("{verdict}");
        }
        Cmd::Witness(cmd) => return witness(cmd),
        Cmd::Values { model, exprs } => {
            let m = load_model(&model)?;
            let span = parse_span(&m, &exprs)?;
            let basis = m
                .separated_basis(&span)
                .map_err(|e| format!("in {}: {e}", model.display()))?;
            let values = m
                .subspace_values(&span)
                .map_err(|e| format!("in {}: {e}", model.display()))?;
            println!("basis: {}", join_exprs(&m, basis.iter()));
            println!("values: {}", join_exprs(&m, values.iter()));
        }
        Cmd::Lab(LabCmd::Run { suite, trials, seed, machine }) => {
            let cfg = SuiteConfig::new(&suite, trials, seed);
            let report = run_suite(&cfg).map_err(|e| e.to_string())?;
            if machine {
                println!("{}", report.machine());
            } else {
                print!("{report}");
            }
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn witness(cmd: WitnessCmd) -> Result<ExitCode, String> {
    let (io, extended, element) = match cmd {
        WitnessCmd::Density { io, lo, hi } => {
            let m = load_model(&io.model)?;
            let a = parse_in(&m, &io.model, &lo)?;
            let b = parse_in(&m, &io.model, &hi)?;
            let (m2, gid) = m
                .density_witness(&a, &b)
                .map_err(|e| format!("in {}: {e}", io.model.display()))?;
            let w = m2.unit(gid);
            (io, m2, w)
        }
        WitnessCmd::Densepair { io, lo, hi } => {
            let m = load_model(&io.model)?;
            let a = parse_in(&m, &io.model, &lo)?;
            let b = parse_in(&m, &io.model, &hi)?;
            let (m2, w) = m
                .dense_pair_witness(&a, &b)
                .map_err(|e| format!("in {}: {e}", io.model.display()))?;
            (io, m2, w)
        }
        WitnessCmd::Independence { io, intervals } => {
            let m = load_model(&io.model)?;
            let (iv0, iv1) = parse_intervals(&m, &io.model, &intervals)?;
            let (m2, w) = m
                .independence_witness(iv0, iv1)
                .map_err(|e| format!("in {}: {e}", io.model.display()))?;
            (io, m2, w)
        }
        WitnessCmd::Nonvalue { io, intervals } => {
            let m = load_model(&io.model)?;
            let (iv0, iv1) = parse_intervals(&m, &io.model, &intervals)?;
            let (m2, w) = m
                .nonvalue_witness(iv0, iv1)
                .map_err(|e| format!("in {}: {e}", io.model.display()))?;
            (io, m2, w)
        }
    };
    println!("{}", render_expr(&extended, &element));
    if let Some(out) = io.out {
        fs::write(&out, render_model(&extended))
            .map_err(|e| format!("writing {}: {e}", out.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn load_model(path: &Path) -> Result<Model, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    parse_model(&text).map_err(|e| format!("in {}: {e}", path.display()))
}

fn parse_in(model: &Model, path: &Path, text: &str) -> Result<Vector, String> {
    parse_expr(model, text).map_err(|e| format!("in `{text}` ({}): {e}", path.display()))
}

/// An interval endpoint: `-inf`, `+inf`, or an element expression.
fn parse_bound(model: &Model, path: &Path, text: &str) -> Result<Bound, String> {
    match text.trim() {
        "-inf" => Ok(Bound::NegInfinite),
        "+inf" => Ok(Bound::PosInfinite),
        expr => Ok(Bound::Finite(parse_in(model, path, expr)?)),
    }
}

fn parse_intervals(
    model: &Model,
    path: &Path,
    intervals: &Intervals,
) -> Result<((Bound, Bound), (Bound, Bound)), String> {
    let lo0 = parse_bound(model, path, &intervals.lo0)?;
    let hi0 = parse_bound(model, path, &intervals.hi0)?;
    let lo1 = parse_bound(model, path, &intervals.lo1)?;
    let hi1 = parse_bound(model, path, &intervals.hi1)?;
    Ok(((lo0, hi0), (lo1, hi1)))
}

/// Bindings of the form `name = expr`, comma separated within and
/// across occurrences of the flag.
fn parse_bindings(model: &Model, flags: &[String]) -> Result<Assignment<Point>, String> {
    let mut sigma = Assignment::new();
    for flag in flags {
        for binding in flag.split(',') {
            let (name, expr) = binding
                .split_once('=')
                .ok_or_else(|| format!("binding `{}` is not of the form name = expr", binding.trim()))?;
            let name = name.trim();
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(format!("binding name `{name}` is not an identifier"));
            }
            let point = parse_point(model, expr.trim())
                .map_err(|e| format!("in binding `{}`: {e}", binding.trim()))?;
            sigma.insert(name.to_string(), point);
        }
    }
    Ok(sigma)
}

fn parse_span(model: &Model, exprs: &str) -> Result<Vec<Vector>, String> {
    exprs
        .split(',')
        .map(|text| {
            parse_expr(model, text.trim()).map_err(|e| format!("in `{}`: {e}", text.trim()))
        })
        .collect()
}

fn join_exprs<'a>(model: &Model, vs: impl Iterator<Item = &'a Vector>) -> String {
    let parts: Vec<String> = vs.map(|v| render_expr(model, v)).collect();
    if parts.is_empty() {
        "(none)".to_string()
    } else {
        parts.join(", ")
    }
}
