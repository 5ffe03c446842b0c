//! Pair suite: the definable dense independent set H and the generalized
//! ball S, witness postconditions on random intervals, the gap around
//! each value in the second order, and the discrete set X squeezed into
//! an arbitrarily small second-order interval.

use std::cmp::Ordering;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::lab::sample::{self, ball_chain, generator_values, nonzero_scalar, random_vector};
use crate::lab::{err_str, run_trials, Report, SuiteConfig, Trial};
use crate::linear::{Point, Vector};
use crate::logic::{evaluate_qf, parse_formula, Assignment};
use crate::scalar::Scalar;
use crate::tower::{render_expr, render_point, Cut, Model};

/// Points checked against the predicate formulas per trial.
const PRED_SAMPLES: usize = 10;
/// Linear combinations checked for S-closure per trial.
const CLOSURE_SAMPLES: usize = 2;

/// Checks the H and S predicates against direct engine computation,
/// S-closure under combinations, density and pair witnesses, the value
/// gap, and the X-instances.
pub fn run_pair_suite(cfg: &SuiteConfig) -> Report {
    run_trials("pairs", cfg, |t, rng, trial| {
        let model = if t == 0 {
            sample::standard_fixture().0
        } else {
            sample::random_model(rng.gen(), rng.gen_range(2..=cfg.bounds.max_gens.max(2)))
        };
        let tag = format!("trial={t}");
        if t == 0 {
            if let Err(e) = pinned_predicates(trial) {
                trial.engine_error("trial=0 pinned", &e);
            }
        }
        if let Err(e) = predicate_samples(t, rng, &model, cfg, trial) {
            trial.engine_error(&tag, &e);
        }
        if let Err(e) = closure_samples(t, rng, &model, trial) {
            trial.engine_error(&tag, &e);
        }
        if let Err(e) = witness_samples(t, rng, &model, cfg, trial) {
            trial.engine_error(&tag, &e);
        }
        if let Err(e) = value_gap(t, &model, trial) {
            trial.engine_error(&tag, &e);
        }
        if let Err(e) = x_instance(t, rng, &model, cfg, trial) {
            trial.engine_error(&tag, &e);
        }
    })
}

/// Membership in S: the value of the point is first-order positive,
/// which includes zero by `v(0) = inf`.
fn in_s(model: &Model, p: &Point) -> Result<bool, String> {
    let v = model.valuate(p).map_err(err_str)?;
    let zero = Point::Finite(model.zero());
    Ok(model.compare(&v, &zero, 0).map_err(err_str)? == Ordering::Greater)
}

/// Membership in H: a finite fixed point of the valuation.
fn in_h(model: &Model, p: &Point) -> Result<bool, String> {
    match p {
        Point::Infinity => Ok(false),
        Point::Finite(_) => Ok(model.valuate(p).map_err(err_str)? == *p),
    }
}

/// The predicate formulas agree with the direct computations on random
/// points, including zero and `inf`.
fn predicate_samples(
    t: u64,
    rng: &mut ChaCha8Rng,
    model: &Model,
    cfg: &SuiteConfig,
    trial: &mut Trial,
) -> Result<(), String> {
    let h_pred = parse_formula("!x = inf & v(x) = x").map_err(err_str)?;
    let s_pred = parse_formula("0 <0 v(x)").map_err(err_str)?;
    for _ in 0..PRED_SAMPLES {
        trial.bump("predicate points");
        let p = sample::random_point(rng, model, &cfg.bounds);
        let mut sigma = Assignment::new();
        sigma.insert("x".to_string(), p.clone());
        let tag = format!("trial={t} x={}", render_point(model, &p));

        let by_formula = evaluate_qf(model, &h_pred, &sigma).map_err(err_str)?;
        let direct = in_h(model, &p)?;
        trial.check(
            by_formula == direct,
            &tag,
            "H-predicate formula agrees with the engine",
            &format!("formula {by_formula}, engine {direct}"),
        );

        let by_formula = evaluate_qf(model, &s_pred, &sigma).map_err(err_str)?;
        let direct = in_s(model, &p)?;
        trial.check(
            by_formula == direct,
            &tag,
            "S-predicate formula agrees with the engine",
            &format!("formula {by_formula}, engine {direct}"),
        );
    }
    Ok(())
}

/// In the standard tower, `t` has value `h1` rather than itself, so the
/// H-predicate rejects it.
fn pinned_predicates(trial: &mut Trial) -> Result<(), String> {
    let (m, _, _, t) = sample::standard_fixture();
    let h_pred = parse_formula("!x = inf & v(x) = x").map_err(err_str)?;
    let mut sigma = Assignment::new();
    sigma.insert("x".to_string(), Point::Finite(t));
    let holds = evaluate_qf(&m, &h_pred, &sigma).map_err(err_str)?;
    trial.check(!holds, "pinned H(t) in the standard tower", "false", "true");
    Ok(())
}

/// S is closed under linear combinations: the value of a combination is
/// at least the minimum of the values, and zero is in S.
fn closure_samples(
    t: u64,
    rng: &mut ChaCha8Rng,
    model: &Model,
    trial: &mut Trial,
) -> Result<(), String> {
    // Two guaranteed members: ball elements over a value above zero.
    let (m1, hplus) = model.adjoin_value(None, Cut::below_weak(0, model.zero())).map_err(err_str)?;
    let (m2, members) = ball_chain(rng, &m1, &hplus, 2)?;
    let s1 = Point::Finite(members[0].clone());
    let s2 = Point::Finite(members[1].clone());
    for (p, name) in [(&s1, "s1"), (&s2, "s2")] {
        trial.check(
            in_s(&m2, p)?,
            &format!("trial={t} member {name}"),
            "constructed member lies in S",
            "outside S",
        );
    }

    for k in 0..CLOSURE_SAMPLES {
        trial.bump("closure combinations");
        let (l1, l2) = if k == 0 {
            (Scalar::from_int(2), Scalar::from_int(-3))
        } else {
            (nonzero_scalar(rng, 4), nonzero_scalar(rng, 4))
        };
        let combo = m2.combine_points(&l1, &s1, &l2, &s2).map_err(err_str)?;
        trial.check(
            in_s(&m2, &combo)?,
            &format!("trial={t} combo {l1}*s1 + {l2}*s2"),
            "combination stays in S",
            &format!("v({}) not >0 0", render_point(&m2, &combo)),
        );
    }

    // The zero combination is in S through v(0) = inf.
    let zero = m2.combine_points(&Scalar::one(), &s1, &-Scalar::one(), &s1).map_err(err_str)?;
    trial.check(in_s(&m2, &zero)?, &format!("trial={t} zero combination"), "0 in S", "outside S");
    Ok(())
}

/// Orders two vectors into a nonempty first-order interval, nudging the
/// upper end when the draws coincide.
fn interval(model: &Model, x: Vector, y: Vector) -> Result<(Vector, Vector), String> {
    let y = if model.compare_vec(&x, &y, 0).map_err(err_str)? == Ordering::Equal {
        let g = model.gen_ids().next().expect("sampled towers are nonempty");
        model.sum(&y, &model.unit(g)).map_err(err_str)?
    } else {
        y
    };
    match model.compare_vec(&x, &y, 0).map_err(err_str)? {
        Ordering::Less => Ok((x, y)),
        _ => Ok((y, x)),
    }
}

/// Density and pair witnesses deliver what they promise on a random
/// interval: a fresh value strictly inside, and an S-member strictly
/// inside.
fn witness_samples(
    t: u64,
    rng: &mut ChaCha8Rng,
    model: &Model,
    cfg: &SuiteConfig,
    trial: &mut Trial,
) -> Result<(), String> {
    let x = random_vector(rng, model, &cfg.bounds);
    let y = random_vector(rng, model, &cfg.bounds);
    let (a, b) = interval(model, x, y)?;
    let tag = format!("trial={t} a={} b={}", render_expr(model, &a), render_expr(model, &b));

    let (m2, gid) = model.density_witness(&a, &b).map_err(err_str)?;
    let w = m2.unit(gid);
    let inside = m2.compare_vec(&a, &w, 0).map_err(err_str)? == Ordering::Less
        && m2.compare_vec(&w, &b, 0).map_err(err_str)? == Ordering::Less;
    trial.check(
        inside && m2.is_value(&w).map_err(err_str)?,
        &tag,
        "density witness is a value strictly inside (a, b)",
        &render_expr(&m2, &w),
    );

    let (m3, w) = model.dense_pair_witness(&a, &b).map_err(err_str)?;
    let inside = m3.compare_vec(&a, &w, 0).map_err(err_str)? == Ordering::Less
        && m3.compare_vec(&w, &b, 0).map_err(err_str)? == Ordering::Less;
    trial.check(
        inside && in_s(&m3, &Point::Finite(w.clone()))?,
        &tag,
        "pair witness is an S-member strictly inside (a, b)",
        &render_expr(&m3, &w),
    );
    trial.bump("witness intervals");
    Ok(())
}

/// No value lies strictly between a value and its double in the second
/// order: `h'` is never inside `(h, 2h)`.
fn value_gap(t: u64, model: &Model, trial: &mut Trial) -> Result<(), String> {
    let values = generator_values(model);
    for h in &values {
        let twice = h.scale(&Scalar::from_int(2));
        for hp in &values {
            trial.bump("gap pairs");
            let above = model.compare_vec(h, hp, 1).map_err(err_str)? == Ordering::Less;
            let below = model.compare_vec(hp, &twice, 1).map_err(err_str)? == Ordering::Less;
            trial.check(
                !(above && below),
                &format!(
                    "trial={t} h={} h'={}",
                    render_expr(model, h),
                    render_expr(model, hp)
                ),
                "h' outside the second-order interval (h, 2h)",
                "inside",
            );
        }
    }
    Ok(())
}

/// Members of `X = { x : x = v(x), x >0 g }`, with `g` a fresh value
/// above `v(eps)`, land inside the second-order interval `(0, eps)`.
fn x_instance(
    t: u64,
    rng: &mut ChaCha8Rng,
    model: &Model,
    cfg: &SuiteConfig,
    trial: &mut Trial,
) -> Result<(), String> {
    // A second-order positive eps; any nonzero vector gives one up to sign.
    let draw = sample::nonzero_vector(rng, model, &cfg.bounds);
    let eps = match model.compare_vec(&model.zero(), &draw, 1).map_err(err_str)? {
        Ordering::Less => draw,
        _ => draw.neg(),
    };
    let alpha = match model.valuate(&Point::Finite(eps.clone())).map_err(err_str)? {
        Point::Finite(v) => v,
        Point::Infinity => return Err("nonzero eps has a finite value".to_string()),
    };

    // g: a density witness above v(eps).
    let (m2, upper) = model.adjoin_value(None, Cut::below_weak(0, alpha.clone())).map_err(err_str)?;
    let (m3, gid) = m2.density_witness(&alpha, &upper).map_err(err_str)?;
    let g = m3.unit(gid);
    let tag = format!("trial={t} eps={} g={}", render_expr(model, &eps), render_expr(&m3, &g));
    trial.check(
        m3.compare_vec(&alpha, &g, 0).map_err(err_str)? == Ordering::Less,
        &tag,
        "v(eps) <0 g",
        "not below",
    );

    // Two members of X: fresh values above g.
    let (m4, x1) = m3.adjoin_value(None, Cut::below_weak(0, g.clone())).map_err(err_str)?;
    let (m5, x2) = m4.adjoin_value(None, Cut::below_weak(0, x1.clone())).map_err(err_str)?;
    for x in [&x1, &x2] {
        trial.bump("x members");
        let member = m5.compare_vec(&g, x, 0).map_err(err_str)? == Ordering::Less
            && m5.is_value(x).map_err(err_str)?;
        trial.check(member, &tag, "constructed point is a member of X", "not a member");
        let lo = m5.compare_vec(&m5.zero(), x, 1).map_err(err_str)? == Ordering::Less;
        let hi = m5.compare_vec(x, &eps, 1).map_err(err_str)? == Ordering::Less;
        trial.check(
            lo && hi,
            &tag,
            "X member lies in the second-order interval (0, eps)",
            &format!("lo={lo} hi={hi}"),
        );
    }
    Ok(())
}
