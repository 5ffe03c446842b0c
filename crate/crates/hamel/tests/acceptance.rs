//! Acceptance gate: one test per criterion, each printing a pass/fail
//! line. Suite-backed criteria run the lab at its pinned scale; the
//! witness and parser criteria drive the engine and binary directly.

use std::cmp::Ordering;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Duration;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hamel::lab::{random_model, run_suite, Report, SuiteConfig, SUITE_NAMES};
use hamel::linear::{Bound, Point, Vector};
use hamel::logic::{parse_formula, print_formula, Formula, Term};
use hamel::scalar::Scalar;
use hamel::tower::Model;

const SEED: u64 = 20260515;

fn criterion<F: FnOnce()>(n: u32, name: &str, body: F) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("criterion {n} ({name}): pass"),
        Err(cause) => {
            println!("criterion {n} ({name}): fail");
            resume_unwind(cause);
        }
    }
}

fn passing_run(suite: &str, trials: u64, max_gens: usize) -> Report {
    let mut cfg = SuiteConfig::new(suite, trials, SEED);
    cfg.bounds.max_gens = max_gens;
    let report = run_suite(&cfg).unwrap();
    assert!(report.passed(), "{report}");
    report
}

fn stat(report: &Report, key: &str) -> u64 {
    report.stats.get(key).copied().unwrap_or(0)
}

#[test]
fn criterion_01_axiom_suite() {
    criterion(1, "axioms", || {
        let report = passing_run("axioms", 50, 12);
        assert!(stat(&report, "samples") >= 50_000, "{report}");
        assert!(report.elapsed <= Duration::from_secs(60), "{report}");
    });
}

#[test]
fn criterion_02_value_independence() {
    criterion(2, "value independence", || {
        let report = passing_run("value-independence", 50, 6);
        assert!(stat(&report, "combinations") >= 1_000, "{report}");
    });
}

#[test]
fn criterion_03_value_growth() {
    criterion(3, "value growth", || {
        let report = passing_run("value-growth", 500, 6);
        assert!(stat(&report, "vanishing") >= 10, "{report}");
        assert!(stat(&report, "saturated") >= 10, "{report}");
    });
}

#[test]
fn criterion_04_elimination() {
    criterion(4, "quantifier elimination", || {
        let report = passing_run("qe", 500, 6);
        assert!(stat(&report, "formulas") >= 500, "{report}");
        assert!(stat(&report, "assignments") >= 150_000, "{report}");
        assert!(stat(&report, "sentences") >= 100, "{report}");
    });
}

#[test]
fn criterion_05_witness_postconditions() {
    criterion(5, "witness postconditions", || {
        for i in 0..500u64 {
            witness_call(i);
        }
    });
}

#[test]
fn criterion_06_insertion() {
    criterion(6, "insertion", || {
        let report = passing_run("insertion", 400, 6);
        for pattern in [
            "constant-value instances",
            "moving-value instances",
            "collapsing instances",
            "criterion instances",
        ] {
            assert!(stat(&report, pattern) >= 100, "{report}");
        }
    });
}

#[test]
fn criterion_07_trichotomy() {
    criterion(7, "trichotomy", || {
        let report = passing_run("trichotomy", 200, 6);
        assert!(stat(&report, "accepted") >= 200, "{report}");
    });
}

#[test]
fn criterion_08_pairs() {
    criterion(8, "pairs and discreteness", || {
        let report = passing_run("pairs", 50, 6);
        assert!(stat(&report, "closure combinations") >= 100, "{report}");
        assert!(stat(&report, "predicate points") >= 500, "{report}");
        assert!(stat(&report, "gap pairs") > 0, "{report}");
        assert!(stat(&report, "x members") >= 50, "{report}");
    });
}

#[test]
fn criterion_09_determinism() {
    criterion(9, "determinism", || {
        // Reports are byte-identical up to the elapsed_ms token, which
        // records wall time and is masked here.
        let trials: std::collections::BTreeMap<&str, u64> = [
            ("axioms", 3),
            ("value-independence", 4),
            ("value-growth", 8),
            ("insertion", 8),
            ("trichotomy", 4),
            ("pairs", 3),
            ("qe", 3),
        ]
        .into();
        for name in SUITE_NAMES {
            let cfg = SuiteConfig::new(name, trials[name], 99);
            let first = run_suite(&cfg).unwrap();
            let second = run_suite(&cfg).unwrap();
            assert_eq!(masked(&first), masked(&second), "suite {name}");
            assert_eq!(first.stats, second.stats, "suite {name}");
        }
    });
}

#[test]
fn criterion_10_parser() {
    criterion(10, "parser", || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..200 {
            let f = corpus_formula(&mut rng, 3);
            let text = print_formula(&f);
            let parsed = parse_formula(&text).unwrap_or_else(|e| panic!("on `{text}`: {e}"));
            assert_eq!(parsed, f, "through `{text}`");
            assert_eq!(print_formula(&parsed), text);
        }
        for bad in [
            "",
            "E x. (a <0 x &",
            "a <0",
            "= a",
            "a ** b",
            "E . a <0 b",
            "a <0 b)",
            "v(a = b",
        ] {
            let out = Command::new(env!("CARGO_BIN_EXE_hamel"))
                .args(["qe", "-e", bad])
                .output()
                .unwrap();
            assert_eq!(out.status.code(), Some(2), "on `{bad}`");
            let err = String::from_utf8(out.stderr).unwrap();
            assert!(err.chars().any(|c| c.is_ascii_digit()), "no position for `{bad}`: {err}");
        }
    });
}

fn masked(report: &Report) -> String {
    report
        .machine()
        .lines()
        .map(|line| match line.split_once(" elapsed_ms=") {
            Some((head, _)) => format!("{head} elapsed_ms=*"),
            None => line.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

// Criterion 5 plumbing: one random witness call, its postcondition, and
// a conservativity snapshot around it.

fn witness_call(i: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (i + 1));
    let model = random_model(rng.gen(), rng.gen_range(1..=6));
    let probes = probe_set(&mut rng, &model);
    let before = snapshot(&model, &probes);

    let extended = match i % 4 {
        0 => {
            let (a, b) = ordered_pair(&mut rng, &model, 0);
            let (m2, gid) = model.density_witness(&a, &b).unwrap();
            let w = m2.unit(gid);
            assert_eq!(m2.compare_vec(&a, &w, 0).unwrap(), Ordering::Less, "call {i}");
            assert_eq!(m2.compare_vec(&w, &b, 0).unwrap(), Ordering::Less, "call {i}");
            assert!(m2.is_value(&w).unwrap(), "call {i}");
            m2
        }
        1 => {
            let iv0 = random_interval(&mut rng, &model, 0);
            let iv1 = random_interval(&mut rng, &model, 1);
            let (m2, w) = model.independence_witness(iv0.clone(), iv1.clone()).unwrap();
            assert_member(&m2, &w, &iv0, 0, i);
            assert_member(&m2, &w, &iv1, 1, i);
            m2
        }
        2 => {
            let iv0 = random_interval(&mut rng, &model, 0);
            let iv1 = random_interval(&mut rng, &model, 1);
            let (m2, w) = model.nonvalue_witness(iv0.clone(), iv1.clone()).unwrap();
            assert_member(&m2, &w, &iv0, 0, i);
            assert_member(&m2, &w, &iv1, 1, i);
            assert!(!m2.is_value(&w).unwrap(), "call {i}");
            m2
        }
        _ => {
            let (a, b) = ordered_pair(&mut rng, &model, 0);
            let (m2, w) = model.dense_pair_witness(&a, &b).unwrap();
            assert_eq!(m2.compare_vec(&a, &w, 0).unwrap(), Ordering::Less, "call {i}");
            assert_eq!(m2.compare_vec(&w, &b, 0).unwrap(), Ordering::Less, "call {i}");
            let value = m2.valuate(&Point::Finite(w.clone())).unwrap();
            let zero = Point::Finite(m2.zero());
            assert_eq!(m2.compare(&value, &zero, 0).unwrap(), Ordering::Greater, "call {i}");
            m2
        }
    };
    assert_eq!(before, snapshot(&extended, &probes), "conservativity broken by call {i}");
}

fn random_vector(rng: &mut ChaCha8Rng, model: &Model) -> Vector {
    let gens: Vec<_> = model.gen_ids().collect();
    let support = rng.gen_range(1..=3.min(gens.len()));
    model.element(gens.choose_multiple(rng, support).map(|g| {
        let mut num = 0;
        while num == 0 {
            num = rng.gen_range(-5i64..=5);
        }
        (*g, Scalar::new(num, rng.gen_range(1..=3)).unwrap())
    }))
}

fn probe_set(rng: &mut ChaCha8Rng, model: &Model) -> Vec<Vector> {
    let mut probes: Vec<Vector> = model.gen_ids().map(|g| model.unit(g)).collect();
    probes.push(model.zero());
    probes.push(random_vector(rng, model));
    probes
}

/// Every pairwise comparison in both orders plus every valuation over
/// the probe set.
fn snapshot(model: &Model, probes: &[Vector]) -> (Vec<Ordering>, Vec<Point>) {
    let mut cmps = Vec::new();
    for x in probes {
        for y in probes {
            for order in 0..2 {
                cmps.push(model.compare_vec(x, y, order).unwrap());
            }
        }
    }
    let vals = probes.iter().map(|x| model.valuate(&Point::Finite(x.clone())).unwrap()).collect();
    (cmps, vals)
}

/// Two elements in strictly increasing position in the given order.
fn ordered_pair(rng: &mut ChaCha8Rng, model: &Model, order: usize) -> (Vector, Vector) {
    let x = random_vector(rng, model);
    let mut y = random_vector(rng, model);
    if model.compare_vec(&x, &y, order).unwrap() == Ordering::Equal {
        let g = model.gen_ids().next().unwrap();
        y = model.sum(&y, &model.unit(g)).unwrap();
    }
    match model.compare_vec(&x, &y, order).unwrap() {
        Ordering::Less => (x, y),
        _ => (y, x),
    }
}

fn random_interval(rng: &mut ChaCha8Rng, model: &Model, order: usize) -> (Bound, Bound) {
    let (lo, hi) = ordered_pair(rng, model, order);
    let lo = if rng.gen_bool(0.2) { Bound::NegInfinite } else { Bound::Finite(lo) };
    let hi = if rng.gen_bool(0.2) { Bound::PosInfinite } else { Bound::Finite(hi) };
    (lo, hi)
}

fn assert_member(model: &Model, w: &Vector, iv: &(Bound, Bound), order: usize, call: u64) {
    if let Bound::Finite(lo) = &iv.0 {
        assert_eq!(model.compare_vec(lo, w, order).unwrap(), Ordering::Less, "call {call}");
    }
    if let Bound::Finite(hi) = &iv.1 {
        assert_eq!(model.compare_vec(w, hi, order).unwrap(), Ordering::Less, "call {call}");
    }
}

// Criterion 10 plumbing: random formulas in the printer's canonical
// shape, so parsing the rendering must reproduce the tree exactly.

const FREE: [&str; 3] = ["a", "b", "c"];
const BOUND: [&str; 3] = ["x", "y", "z"];

fn corpus_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-6i64..=6);
    }
    Scalar::new(num, rng.gen_range(1..=3)).unwrap()
}

fn corpus_carrier(rng: &mut ChaCha8Rng, val_budget: usize) -> Term {
    if val_budget > 0 && rng.gen_bool(0.3) {
        Term::val(corpus_term(rng, val_budget - 1))
    } else {
        Term::var([FREE.as_slice(), BOUND.as_slice()].concat().choose(rng).unwrap())
    }
}

fn corpus_summand(rng: &mut ChaCha8Rng, val_budget: usize) -> Term {
    let carrier = corpus_carrier(rng, val_budget);
    if rng.gen_bool(0.5) {
        Term::scale(corpus_scalar(rng), carrier)
    } else {
        carrier
    }
}

fn corpus_term(rng: &mut ChaCha8Rng, val_budget: usize) -> Term {
    match rng.gen_range(0u32..20) {
        0 => return Term::Inf,
        1 => return Term::Zero,
        _ => {}
    }
    let mut term = corpus_summand(rng, val_budget);
    for _ in 1..rng.gen_range(1..=3usize) {
        term = Term::add(term, corpus_summand(rng, val_budget));
    }
    term
}

fn corpus_atom(rng: &mut ChaCha8Rng) -> Formula {
    match rng.gen_range(0u32..10) {
        0 => Formula::True,
        1 => Formula::False,
        2..=4 => Formula::Eq(corpus_term(rng, 1), corpus_term(rng, 1)),
        n => Formula::Lt(usize::from(n % 2 == 0), corpus_term(rng, 1), corpus_term(rng, 1)),
    }
}

fn corpus_formula(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return corpus_atom(rng);
    }
    match rng.gen_range(0u32..6) {
        0 => Formula::not(corpus_formula(rng, depth - 1)),
        1 => Formula::and(corpus_formula(rng, depth - 1), corpus_formula(rng, depth - 1)),
        2 => Formula::or(corpus_formula(rng, depth - 1), corpus_formula(rng, depth - 1)),
        3 => Formula::implies(corpus_formula(rng, depth - 1), corpus_formula(rng, depth - 1)),
        4 => Formula::exists(BOUND.choose(rng).unwrap(), corpus_formula(rng, depth - 1)),
        _ => Formula::forall(BOUND.choose(rng).unwrap(), corpus_formula(rng, depth - 1)),
    }
}
