//! Insertion suite: finite surrogates of the indiscernible-sequence
//! lemmas. A configuration is eleven indices, five on each side of an
//! inserted middle index `c`. Every hypothesis a lemma uses — order
//! monotonicity, the valuation equalities away from `c`, constancy —
//! is verified by the engine before the conclusion at `c` is asserted.

use std::cmp::Ordering;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::lab::sample::{self, ball_chain, generator_values, increasing_values, random_vector};
use crate::lab::{err_str, run_trials, Report, SuiteConfig, Trial};
use crate::linear::{Point, Vector};
use crate::logic::{evaluate_qf, Assignment, Formula, Term};
use crate::scalar::Scalar;
use crate::tower::{render_expr, AlphaCut, Model};

/// Sequence length: five indices either side of the inserted one.
const SEQ: usize = 11;
/// The inserted index.
const C: usize = 5;
/// How often an infeasible configuration may be redrawn.
const RETRY_CAP: u32 = 100;

/// Runs the four configuration patterns round-robin: value constant away
/// from the base point, value moving with the sequence, collapsing terms,
/// and the combined criterion check through formula evaluation.
pub fn run_insertion_suite(cfg: &SuiteConfig) -> Report {
    run_trials("insertion", cfg, |t, rng, trial| {
        let pattern = t % 4;
        let mut retries = 0u32;
        loop {
            let built = match pattern {
                0 => constant_value_pattern(t, rng, cfg, trial),
                1 => moving_value_pattern(t, rng, cfg, trial),
                2 => collapsing_pattern(t, rng, cfg, trial),
                _ => criterion_pattern(t, rng, cfg, trial),
            };
            match built {
                Err(e) => {
                    trial.engine_error(&format!("trial={t} pattern={pattern}"), &e);
                    break;
                }
                Ok(true) => break,
                Ok(false) => {
                    retries += 1;
                    if retries > RETRY_CAP {
                        trial.check(
                            false,
                            &format!("trial={t} pattern={pattern}"),
                            "a feasible configuration within the retry cap",
                            "hypotheses kept failing",
                        );
                        break;
                    }
                }
            }
        }
        trial.count("retries", retries as u64);
    })
}

/// Verifies the shared order hypotheses: the differences `a_i - b` are
/// positive and strictly increasing in `order`, so the sequence is in
/// particular nonconstant. Returns false when a check fails, sending the
/// trial back to the sampler.
fn monotone_hypotheses(
    model: &Model,
    a: &[Vector],
    b: &Vector,
    order: usize,
) -> Result<bool, String> {
    let mut prev = model.zero();
    for a_i in a {
        let x = model.diff(a_i, b).map_err(err_str)?;
        if model.compare_vec(&prev, &x, order).map_err(err_str)? != Ordering::Less {
            return Ok(false);
        }
        prev = x;
    }
    Ok(true)
}

/// Value equalities away from the inserted index: `v(a_i - b)` must land
/// on `expected(i)` for every i except `c`.
fn value_hypotheses(
    model: &Model,
    a: &[Vector],
    b: &Vector,
    expected: impl Fn(usize) -> Point,
) -> Result<bool, String> {
    for (i, a_i) in a.iter().enumerate() {
        if i == C {
            continue;
        }
        let d = model.diff(a_i, b).map_err(err_str)?;
        if model.valuate(&Point::Finite(d)).map_err(err_str)? != expected(i) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Nonconstant sequence, constant value: `a_i = b + x_i` with the `x_i`
/// a second-order increasing ball chain of fixed value `beta`. The value
/// at the inserted index must be `beta` as well.
fn constant_value_pattern(
    t: u64,
    rng: &mut ChaCha8Rng,
    cfg: &SuiteConfig,
    trial: &mut Trial,
) -> Result<bool, String> {
    let size = rng.gen_range(1..=3);
    let base = sample::random_model(rng.gen(), size);
    let values = generator_values(&base);
    let beta = values[rng.gen_range(0..values.len())].clone();
    let b = if rng.gen_bool(0.3) { base.zero() } else { random_vector(rng, &base, &cfg.bounds) };
    let (model, xs) = ball_chain(rng, &base, &beta, SEQ)?;
    let a: Vec<Vector> =
        xs.iter().map(|x| model.sum(&b, x)).collect::<Result<_, _>>().map_err(err_str)?;

    if !monotone_hypotheses(&model, &a, &b, 1)? {
        return Ok(false);
    }
    if !value_hypotheses(&model, &a, &b, |_| Point::Finite(beta.clone()))? {
        return Ok(false);
    }

    let d = model.diff(&a[C], &b).map_err(err_str)?;
    let v = model.valuate(&Point::Finite(d)).map_err(err_str)?;
    trial.check(
        v == Point::Finite(beta.clone()),
        &format!(
            "trial={t} pattern=constant-value b={} beta={}",
            render_expr(&model, &b),
            render_expr(&model, &beta)
        ),
        "v(a_c - b) equals the constant value",
        &crate::tower::render_point(&model, &v),
    );
    trial.bump("constant-value instances");
    Ok(true)
}

/// Nonconstant sequence, moving values: `v(a_i - b) = h_i` with the `h_i`
/// strictly increasing in the first order. The value at the inserted
/// index must be `h_c`.
fn moving_value_pattern(
    t: u64,
    rng: &mut ChaCha8Rng,
    cfg: &SuiteConfig,
    trial: &mut Trial,
) -> Result<bool, String> {
    let size = rng.gen_range(0..=2);
    let base = sample::random_model(rng.gen(), size);
    let (model, hs, xs) = moving_chain(rng, &base)?;
    let b = if rng.gen_bool(0.3) { model.zero() } else { random_vector(rng, &model, &cfg.bounds) };
    let a: Vec<Vector> =
        xs.iter().map(|x| model.sum(&b, x)).collect::<Result<_, _>>().map_err(err_str)?;

    // The value sequence must be strictly increasing in the first order.
    for pair in hs.windows(2) {
        if model.compare_vec(&pair[0], &pair[1], 0).map_err(err_str)? != Ordering::Less {
            return Ok(false);
        }
    }
    // Nonconstant sequence of points.
    for pair in a.windows(2) {
        if pair[0] == pair[1] {
            return Ok(false);
        }
    }
    if !value_hypotheses(&model, &a, &b, |i| Point::Finite(hs[i].clone()))? {
        return Ok(false);
    }

    let d = model.diff(&a[C], &b).map_err(err_str)?;
    let v = model.valuate(&Point::Finite(d)).map_err(err_str)?;
    trial.check(
        v == Point::Finite(hs[C].clone()),
        &format!("trial={t} pattern=moving-value b={}", render_expr(&model, &b)),
        "v(a_c - b) equals the inserted value h_c",
        &crate::tower::render_point(&model, &v),
    );
    trial.bump("moving-value instances");
    Ok(true)
}

/// Eleven increasing values `h_i`, and per index either the value itself
/// or a ball element of that value, so `v(x_i) = h_i` throughout.
fn moving_chain(
    rng: &mut ChaCha8Rng,
    base: &Model,
) -> Result<(Model, Vec<Vector>, Vec<Vector>), String> {
    let (mut model, hs) = increasing_values(base, SEQ)?;
    let mut xs = Vec::with_capacity(SEQ);
    for h in &hs {
        if rng.gen_bool(0.5) {
            xs.push(h.clone());
        } else {
            let acut = AlphaCut { alpha: h.clone(), pivot: model.zero(), weak: rng.gen_bool(0.5) };
            let cut0 = sample::random_cut(rng, &model, 0);
            let (next, x) = model.adjoin_ball(None, acut, cut0).map_err(err_str)?;
            model = next;
            xs.push(x);
        }
    }
    Ok((model, hs, xs))
}

/// Collapsing terms: the term sequence `g(a_i, b1)` is constant even
/// though `a_i` moves, or the sequence itself is constant and the value
/// degenerates to `inf` on both sides.
fn collapsing_pattern(
    t: u64,
    rng: &mut ChaCha8Rng,
    cfg: &SuiteConfig,
    trial: &mut Trial,
) -> Result<bool, String> {
    let size = rng.gen_range(1..=3);
    let base = sample::random_model(rng.gen(), size);
    if rng.gen_bool(0.5) {
        // g ignores the moving coordinate up to cancellation.
        let (model, hs) = increasing_values(&base, SEQ)?;
        let s = sample::nonzero_vector(rng, &model, &cfg.bounds);
        let vs = match model.valuate(&Point::Finite(s.clone())).map_err(err_str)? {
            Point::Finite(v) => v,
            Point::Infinity => return Ok(false),
        };
        let g = if rng.gen_bool(0.5) {
            Term::var("y1")
        } else {
            Term::add(
                Term::var("x1"),
                Term::add(Term::scale(-Scalar::one(), Term::var("x1")), Term::var("y1")),
            )
        };
        let phi = Formula::Eq(Term::val(g.clone()), Term::var("y2"));
        let sigma = |i: usize| -> Assignment<Point> {
            let mut s_i = Assignment::new();
            s_i.insert("x1".to_string(), Point::Finite(hs[i].clone()));
            s_i.insert("y1".to_string(), Point::Finite(s.clone()));
            s_i.insert("y2".to_string(), Point::Finite(vs.clone()));
            s_i
        };
        if !constant_term_hypotheses(&model, &g, &sigma)? {
            return Ok(false);
        }
        for i in (0..SEQ).filter(|i| *i != C) {
            if !evaluate_qf(&model, &phi, &sigma(i)).map_err(err_str)? {
                return Ok(false);
            }
        }
        let at_c = evaluate_qf(&model, &phi, &sigma(C)).map_err(err_str)?;
        trial.check(
            at_c,
            &format!("trial={t} pattern=collapsing s={}", render_expr(&model, &s)),
            "v(g(a_c, b1)) = h(a_c, b2) for the constant term sequence",
            "false",
        );
    } else {
        // Degenerate shadow: a constant sequence based at itself.
        let a = random_vector(rng, &base, &cfg.bounds);
        let g = Term::add(Term::var("x1"), Term::scale(-Scalar::one(), Term::var("y1")));
        let phi = Formula::Eq(Term::val(g.clone()), Term::Inf);
        let sigma = |_: usize| -> Assignment<Point> {
            let mut s_i = Assignment::new();
            s_i.insert("x1".to_string(), Point::Finite(a.clone()));
            s_i.insert("y1".to_string(), Point::Finite(a.clone()));
            s_i
        };
        if !constant_term_hypotheses(&base, &g, &sigma)? {
            return Ok(false);
        }
        for i in (0..SEQ).filter(|i| *i != C) {
            if !evaluate_qf(&base, &phi, &sigma(i)).map_err(err_str)? {
                return Ok(false);
            }
        }
        let at_c = evaluate_qf(&base, &phi, &sigma(C)).map_err(err_str)?;
        trial.check(
            at_c,
            &format!("trial={t} pattern=degenerate a={}", render_expr(&base, &a)),
            "v(a_c - b) = inf on both sides",
            "false",
        );
    }
    trial.bump("collapsing instances");
    Ok(true)
}

/// The term sequence `g` under `sigma(i)` must be constant across all
/// indices; checked by engine evaluation, not by construction.
fn constant_term_hypotheses(
    model: &Model,
    g: &Term,
    sigma: &impl Fn(usize) -> Assignment<Point>,
) -> Result<bool, String> {
    let first = crate::logic::eval_term(model, g, &sigma(0)).map_err(err_str)?;
    for i in 1..SEQ {
        if crate::logic::eval_term(model, g, &sigma(i)).map_err(err_str)? != first {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The combined criterion check: one of the three value shapes is drawn,
/// the matching configuration is built, and both the hypotheses and the
/// conclusion are read through formula evaluation `v(g(x, y)) = h(x, y)`.
fn criterion_pattern(
    t: u64,
    rng: &mut ChaCha8Rng,
    cfg: &SuiteConfig,
    trial: &mut Trial,
) -> Result<bool, String> {
    let g = Term::add(Term::var("x1"), Term::scale(-Scalar::one(), Term::var("y1")));
    let case = rng.gen_range(0u32..3);
    let (model, phi, assignments) = match case {
        0 => {
            // Constant value shape.
            let size = rng.gen_range(1..=2);
            let base = sample::random_model(rng.gen(), size);
            let values = generator_values(&base);
            let beta = values[rng.gen_range(0..values.len())].clone();
            let b = random_vector(rng, &base, &cfg.bounds);
            let (model, xs) = ball_chain(rng, &base, &beta, SEQ)?;
            let phi = Formula::Eq(Term::val(g.clone()), Term::var("y2"));
            let assignments: Vec<Assignment<Point>> = xs
                .iter()
                .map(|x| {
                    let a_i = model.sum(&b, x)?;
                    let mut s_i = Assignment::new();
                    s_i.insert("x1".to_string(), Point::Finite(a_i));
                    s_i.insert("y1".to_string(), Point::Finite(b.clone()));
                    s_i.insert("y2".to_string(), Point::Finite(beta.clone()));
                    Ok(s_i)
                })
                .collect::<Result<_, crate::tower::TowerError>>()
                .map_err(err_str)?;
            (model, phi, assignments)
        }
        1 => {
            // Projection shape: the value moves with a tuple coordinate.
            let base = sample::random_model(rng.gen(), rng.gen_range(0..=2));
            let (model, hs, xs) = moving_chain(rng, &base)?;
            let b = random_vector(rng, &model, &cfg.bounds);
            let phi = Formula::Eq(Term::val(g.clone()), Term::var("x2"));
            let assignments: Vec<Assignment<Point>> = xs
                .iter()
                .zip(&hs)
                .map(|(x, h)| {
                    let a_i = model.sum(&b, x)?;
                    let mut s_i = Assignment::new();
                    s_i.insert("x1".to_string(), Point::Finite(a_i));
                    s_i.insert("x2".to_string(), Point::Finite(h.clone()));
                    s_i.insert("y1".to_string(), Point::Finite(b.clone()));
                    Ok(s_i)
                })
                .collect::<Result<_, crate::tower::TowerError>>()
                .map_err(err_str)?;
            (model, phi, assignments)
        }
        _ => {
            // Infinite shape: the sequence sits on its own base point.
            let base = sample::random_model(rng.gen(), rng.gen_range(1..=3));
            let a = random_vector(rng, &base, &cfg.bounds);
            let phi = Formula::Eq(Term::val(g.clone()), Term::Inf);
            let assignments: Vec<Assignment<Point>> = (0..SEQ)
                .map(|_| {
                    let mut s_i = Assignment::new();
                    s_i.insert("x1".to_string(), Point::Finite(a.clone()));
                    s_i.insert("y1".to_string(), Point::Finite(a.clone()));
                    s_i
                })
                .collect();
            (base, phi, assignments)
        }
    };

    for (i, sigma) in assignments.iter().enumerate() {
        if i == C {
            continue;
        }
        if !evaluate_qf(&model, &phi, sigma).map_err(err_str)? {
            return Ok(false);
        }
    }
    let at_c = evaluate_qf(&model, &phi, &assignments[C]).map_err(err_str)?;
    trial.check(
        at_c,
        &format!("trial={t} pattern=criterion case={case}"),
        "v(g(a_c, b1)) = h(a_c, b2) at the inserted index",
        "false",
    );
    trial.bump("criterion instances");
    Ok(true)
}
