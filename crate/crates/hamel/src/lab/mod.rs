//! Randomized property suites over the symbolic engine.
//!
//! Each suite draws seeded random configurations, checks an exact
//! property instance by instance, and collects the counterexamples into
//! a [`Report`]. Nothing here is statistical: every assertion is an
//! exact engine computation, and every hypothesis of a checked lemma is
//! verified by the engine before its conclusion is asserted. Indiscernible
//! sequences are replaced by finite surrogates satisfying exactly the
//! quantifier-free conditions the corresponding proofs use.
//!
//! Runs are deterministic per `(seed, trials, bounds)`: trials draw from
//! independent, seed-indexed random streams and are merged in trial
//! order, so a failing instance can be replayed from its report.

mod axioms;
mod insertion;
mod pairs;
mod qe_suite;
mod sample;
mod trichotomy;
mod values;

pub use axioms::run_axiom_suite;
pub use insertion::run_insertion_suite;
pub use pairs::run_pair_suite;
pub use qe_suite::run_qe_suite;
pub use sample::{model_from_schedule, random_model, random_plain_model, Step};
pub use trichotomy::run_trichotomy;
pub use values::{run_value_growth, run_value_independence};

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// The suite names accepted by [`run_suite`].
pub const SUITE_NAMES: [&str; 7] = [
    "axioms",
    "value-independence",
    "value-growth",
    "insertion",
    "trichotomy",
    "pairs",
    "qe",
];

/// Size limits for randomly drawn models and elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeBounds {
    /// Largest number of generators a random tower may have.
    pub max_gens: usize,
    /// Largest number of generators a random element may touch.
    pub max_support: usize,
    /// Largest numerator and denominator of a random scalar.
    pub scalar_height: u32,
}

impl Default for SizeBounds {
    fn default() -> SizeBounds {
        SizeBounds { max_gens: 6, max_support: 4, scalar_height: 9 }
    }
}

/// What to run: a suite name, a trial count, a seed, and size bounds.
///
/// Identical configurations produce identical runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: String,
    pub trials: u64,
    pub seed: u64,
    pub bounds: SizeBounds,
}

impl SuiteConfig {
    pub fn new(suite: &str, trials: u64, seed: u64) -> SuiteConfig {
        SuiteConfig { suite: suite.to_string(), trials, seed, bounds: SizeBounds::default() }
    }
}

/// One counterexample: the inputs in text syntax, what the property
/// demanded, and what the engine computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub inputs: String,
    pub expected: String,
    pub actual: String,
}

/// The outcome of a suite run. The suite passed iff `failures` is empty.
#[derive(Debug, Clone)]
pub struct Report {
    pub suite: String,
    pub trials: u64,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
    /// Deterministic counters: growth distributions, clause tallies,
    /// retry counts, and similar per-suite bookkeeping.
    pub stats: BTreeMap<String, u64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The line-oriented machine format: one summary line, then one
    /// `fail:` line per counterexample.
    pub fn machine(&self) -> String {
        let mut out = format!(
            "suite={} trials={} failures={} elapsed_ms={}",
            self.suite,
            self.trials,
            self.failures.len(),
            self.elapsed.as_millis()
        );
        for failure in &self.failures {
            out.push_str("\nfail: ");
            out.push_str(&failure.inputs);
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        writeln!(
            f,
            "suite {}: {} ({} trials, {} failures, {} ms)",
            self.suite,
            verdict,
            self.trials,
            self.failures.len(),
            self.elapsed.as_millis()
        )?;
        for (key, value) in &self.stats {
            writeln!(f, "  {key} = {value}")?;
        }
        for failure in &self.failures {
            writeln!(f, "  fail on {}", failure.inputs)?;
            writeln!(f, "    expected {}", failure.expected)?;
            writeln!(f, "    actual   {}", failure.actual)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum LabError {
    #[error("unknown suite `{0}`; expected one of: axioms, value-independence, value-growth, insertion, trichotomy, pairs, qe")]
    UnknownSuite(String),
}

/// Runs the suite named by `cfg.suite`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report, LabError> {
    match cfg.suite.as_str() {
        "axioms" => Ok(run_axiom_suite(cfg)),
        "value-independence" => Ok(run_value_independence(cfg)),
        "value-growth" => Ok(run_value_growth(cfg)),
        "insertion" => Ok(run_insertion_suite(cfg)),
        "trichotomy" => Ok(run_trichotomy(cfg)),
        "pairs" => Ok(run_pair_suite(cfg)),
        "qe" => Ok(run_qe_suite(cfg)),
        other => Err(LabError::UnknownSuite(other.to_string())),
    }
}

/// Shared trial loop: runs `body` once per trial on an independent random
/// stream and merges failures and stats in trial order. An engine error
/// inside a trial becomes a failure record rather than a panic.
fn run_trials<F>(suite: &str, cfg: &SuiteConfig, mut body: F) -> Report
where
    F: FnMut(u64, &mut ChaCha8Rng, &mut Trial),
{
    let start = Instant::now();
    let mut trial = Trial { failures: Vec::new(), stats: BTreeMap::new() };
    for t in 0..cfg.trials {
        let mut rng = sample::trial_rng(cfg.seed, t);
        body(t, &mut rng, &mut trial);
    }
    Report {
        suite: suite.to_string(),
        trials: cfg.trials,
        failures: trial.failures,
        elapsed: start.elapsed(),
        stats: trial.stats,
    }
}

/// Mutable state a trial body reports into.
struct Trial {
    failures: Vec<Failure>,
    stats: BTreeMap<String, u64>,
}

impl Trial {
    fn bump(&mut self, key: &str) {
        self.count(key, 1);
    }

    fn count(&mut self, key: &str, n: u64) {
        *self.stats.entry(key.to_string()).or_insert(0) += n;
    }

    fn check(&mut self, ok: bool, inputs: &str, expected: &str, actual: &str) {
        if !ok {
            self.failures.push(Failure {
                inputs: inputs.to_string(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    /// Records an engine error raised while preparing or checking a trial.
    fn engine_error(&mut self, inputs: &str, err: &str) {
        self.failures.push(Failure {
            inputs: inputs.to_string(),
            expected: "engine call succeeds".to_string(),
            actual: err.to_string(),
        });
    }
}

/// Renders an engine error for a failure record.
fn err_str<E: fmt::Display>(e: E) -> String {
    e.to_string()
}
