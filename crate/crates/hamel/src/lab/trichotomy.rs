//! Trichotomy suite: a term over value tuples that stays inside the
//! value set must do so in exactly one of three ways — it is constantly
//! `inf`, constantly one fixed value, or a projection to one tuple
//! coordinate. The sampler discards draws whose term leaves the value
//! set and retries with fresh randomness.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::lab::sample::{self, increasing_values, nonzero_scalar, random_vector};
use crate::lab::{err_str, run_trials, Report, SuiteConfig, Trial};
use crate::linear::{Point, Vector};
use crate::logic::{eval_term, Assignment, Term};
use crate::scalar::Scalar;
use crate::tower::Model;

/// Indices per sampled sequence.
const SEQ: usize = 7;
/// How often an instance may be redrawn before the trial gives up.
const RETRY_CAP: u32 = 100;

/// Samples value-tuple sequences and terms, keeps the instances whose
/// term lands in the value set at every index, and asserts that exactly
/// one clause shape fits all of them. The report counts which.
pub fn run_trichotomy(cfg: &SuiteConfig) -> Report {
    run_trials("trichotomy", cfg, |t, rng, trial| {
        if t == 0 {
            if let Err(e) = pinned_instances(trial) {
                trial.engine_error("trial=0 pinned", &e);
            }
        }
        let mut retries = 0u32;
        loop {
            match one_instance(t, rng, cfg, trial) {
                Err(e) => {
                    trial.engine_error(&format!("trial={t}"), &e);
                    break;
                }
                Ok(true) => break,
                Ok(false) => {
                    trial.bump("discarded");
                    retries += 1;
                    if retries > RETRY_CAP {
                        trial.check(
                            false,
                            &format!("trial={t}"),
                            "an accepted instance within the retry cap",
                            "every draw left the value set",
                        );
                        break;
                    }
                }
            }
        }
        trial.count("retries", retries as u64);
    })
}

/// The grid of argument tuples: per coordinate a strictly increasing,
/// pairwise disjoint sequence of fresh values.
struct Grid {
    model: Model,
    /// `coords[l][i]` is the l-th coordinate at index i.
    coords: Vec<Vec<Vector>>,
}

fn build_grid(rng: &mut ChaCha8Rng, base: &Model, m: usize) -> Result<Grid, String> {
    let (model, flat) = increasing_values(base, m * SEQ)?;
    let mut coords = vec![Vec::with_capacity(SEQ); m];
    for (k, h) in flat.into_iter().enumerate() {
        coords[k % m].push(h);
    }
    // A random coordinate order keeps no coordinate systematically least.
    for l in 0..m {
        if rng.gen_bool(0.5) {
            coords.swap(l, rng.gen_range(0..m));
        }
    }
    Ok(Grid { model, coords })
}

fn one_instance(
    t: u64,
    rng: &mut ChaCha8Rng,
    cfg: &SuiteConfig,
    trial: &mut Trial,
) -> Result<bool, String> {
    let base = sample::random_model(rng.gen(), rng.gen_range(1..=2));
    let m = rng.gen_range(1..=3);
    let grid = build_grid(rng, &base, m)?;
    let model = &grid.model;

    let n = rng.gen_range(0..=2);
    let mut b: Vec<Point> = (0..n).map(|_| random_parameter(rng, &base, cfg)).collect();

    // Draw a term shape; wild draws are usually discarded below.
    let h = match rng.gen_range(0u32..100) {
        0..=14 => {
            let mut term = Term::Inf;
            if rng.gen_bool(0.5) && n > 0 {
                term = Term::add(term, Term::var("y1"));
            }
            term
        }
        15..=44 => {
            let beta = pick_value(rng, &base)?;
            if b.is_empty() {
                b.push(Point::Finite(beta));
            } else {
                b[0] = Point::Finite(beta);
            }
            with_dummy(rng, Term::var("y1"), m, b.len())
        }
        45..=84 => {
            let l = rng.gen_range(1..=m);
            let spec_shape = rng.gen_bool(0.3) && !b.is_empty();
            if spec_shape {
                // The pinned shape x_l + y_1 with b_1 = 0.
                b[0] = Point::Finite(model.zero());
                Term::add(Term::var(&format!("x{l}")), Term::var("y1"))
            } else {
                with_dummy(rng, Term::var(&format!("x{l}")), m, b.len())
            }
        }
        _ => wild_term(rng, m, b.len()),
    };

    let sigma = |i: usize| -> Assignment<Point> {
        let mut s_i = Assignment::new();
        for (l, coord) in grid.coords.iter().enumerate() {
            s_i.insert(format!("x{}", l + 1), Point::Finite(coord[i].clone()));
        }
        for (j, p) in b.iter().enumerate() {
            s_i.insert(format!("y{}", j + 1), p.clone());
        }
        s_i
    };

    // Acceptance: the term must land in the value set at every index.
    let mut vals = Vec::with_capacity(SEQ);
    for i in 0..SEQ {
        let v = eval_term(model, &h, &sigma(i)).map_err(err_str)?;
        let in_values = match &v {
            Point::Infinity => true,
            Point::Finite(w) => model.is_value(w).map_err(err_str)?,
        };
        if !in_values {
            return Ok(false);
        }
        vals.push(v);
    }
    trial.bump("accepted");

    classify(t, trial, model, &grid, &h, &vals)?;
    Ok(true)
}

/// Asserts that exactly one clause shape fits the accepted instance and
/// counts which one.
fn classify(
    t: u64,
    trial: &mut Trial,
    model: &Model,
    grid: &Grid,
    h: &Term,
    vals: &[Point],
) -> Result<(), String> {
    let all_inf = vals.iter().all(|v| *v == Point::Infinity);
    let constant = vals.iter().all(|v| v == &vals[0]) && vals[0] != Point::Infinity;
    let mut projections = Vec::new();
    for (l, coord) in grid.coords.iter().enumerate() {
        let fits = vals
            .iter()
            .zip(coord)
            .all(|(v, a)| matches!(v, Point::Finite(w) if w == a));
        if fits {
            projections.push(l + 1);
        }
    }
    let hits = usize::from(all_inf) + usize::from(constant) + projections.len();
    let tag = format!(
        "trial={t} h={h} values=[{}]",
        vals.iter().map(|v| crate::tower::render_point(model, v)).collect::<Vec<_>>().join(", ")
    );
    trial.check(
        hits == 1,
        &tag,
        "exactly one clause shape fits",
        &format!("{hits} shapes fit"),
    );
    if all_inf {
        trial.bump("clause=inf");
    } else if constant {
        trial.bump("clause=constant");
    } else if projections.len() == 1 {
        trial.bump("clause=projection");
    }
    Ok(())
}

/// A parameter point: zero, a random element, a base value, or `inf`.
fn random_parameter(rng: &mut ChaCha8Rng, base: &Model, cfg: &SuiteConfig) -> Point {
    match rng.gen_range(0u32..10) {
        0..=3 => Point::Finite(base.zero()),
        4..=6 => Point::Finite(random_vector(rng, base, &cfg.bounds)),
        7 | 8 => match pick_value(rng, base) {
            Ok(v) => Point::Finite(v),
            Err(_) => Point::Finite(base.zero()),
        },
        _ => Point::Infinity,
    }
}

fn pick_value(rng: &mut ChaCha8Rng, base: &Model) -> Result<Vector, String> {
    let values = sample::generator_values(base);
    if values.is_empty() {
        return Err("no values in the base tower".to_string());
    }
    Ok(values[rng.gen_range(0..values.len())].clone())
}

/// Wraps a core term with summands that cancel exactly, so the shape
/// survives normalization but not the raw syntax.
fn with_dummy(rng: &mut ChaCha8Rng, core: Term, m: usize, n: usize) -> Term {
    match rng.gen_range(0u32..4) {
        0 => core,
        1 => {
            let l = rng.gen_range(1..=m);
            let x = format!("x{l}");
            Term::add(core, Term::add(Term::var(&x), Term::scale(-Scalar::one(), Term::var(&x))))
        }
        2 if n > 0 => {
            let j = rng.gen_range(1..=n);
            let y = format!("y{j}");
            let c = nonzero_scalar(rng, 2);
            Term::add(
                Term::add(core, Term::scale(c.clone(), Term::var(&y))),
                Term::scale(-c, Term::var(&y)),
            )
        }
        _ => Term::add(Term::Zero, core),
    }
}

/// An arbitrary small combination; mostly rejected by the acceptance
/// check, occasionally collapsing onto one of the clause shapes.
fn wild_term(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Term {
    let mut term = Term::Zero;
    for l in 1..=m {
        if rng.gen_bool(0.5) {
            let c = nonzero_scalar(rng, 2);
            term = Term::add(term, Term::scale(c, Term::var(&format!("x{l}"))));
        }
    }
    for j in 1..=n {
        if rng.gen_bool(0.4) {
            let c = nonzero_scalar(rng, 2);
            term = Term::add(term, Term::scale(c, Term::var(&format!("y{j}"))));
        }
    }
    term
}

/// The fixed instances: a bare projection, and a parameter that is a
/// fixed value.
fn pinned_instances(trial: &mut Trial) -> Result<(), String> {
    let base = sample::random_model(11, 1);
    let mut rng = sample::trial_rng(11, 0);
    let grid = build_grid(&mut rng, &base, 1)?;
    let model = &grid.model;
    let beta = pick_value(&mut rng, &base)?;

    let sigma = |i: usize| -> Assignment<Point> {
        let mut s_i = Assignment::new();
        s_i.insert("x1".to_string(), Point::Finite(grid.coords[0][i].clone()));
        s_i.insert("y1".to_string(), Point::Finite(beta.clone()));
        s_i
    };

    // h = x1 is the projection clause.
    let mut proj = true;
    for i in 0..SEQ {
        let v = eval_term(model, &Term::var("x1"), &sigma(i)).map_err(err_str)?;
        proj &= v == Point::Finite(grid.coords[0][i].clone());
    }
    trial.check(proj, "pinned h=x1", "projection clause with l=1", "mismatch");

    // h = y1 with a fixed value parameter is the constant clause.
    let mut constant = true;
    for i in 0..SEQ {
        let v = eval_term(model, &Term::var("y1"), &sigma(i)).map_err(err_str)?;
        constant &= v == Point::Finite(beta.clone());
    }
    trial.check(constant, "pinned h=y1 with b1 a value", "constant clause", "mismatch");
    Ok(())
}
