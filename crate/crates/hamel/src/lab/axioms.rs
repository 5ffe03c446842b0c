//! Axiom suite: the valuation and order laws on random towers and on
//! the leading-term structure, plus agreement of the two valuate
//! implementations.

use std::cmp::Ordering;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::lab::sample::{self, nonzero_scalar, random_vector};
use crate::lab::{err_str, run_trials, Report, SuiteConfig, Trial};
use crate::linear::Point;
use crate::oracle::{lead_value_compare, LeadPoint, LeadVector};
use crate::scalar::Scalar;
use crate::tower::{render_expr, Model};

/// Element samples drawn per random model.
const MODEL_SAMPLES: usize = 1000;
/// Element samples drawn on the leading-term structure per trial.
const ORACLE_SAMPLES: usize = 100;

/// Checks every valuation axiom, the order compatibility laws, and the
/// absorption laws of `inf` on sampled elements of random Hamel towers
/// and of the leading-term structure. Failures are collected, never
/// raised.
pub fn run_axiom_suite(cfg: &SuiteConfig) -> Report {
    run_trials("axioms", cfg, |t, rng, trial| {
        let size = rng.gen_range(1..=cfg.bounds.max_gens.max(1));
        let model = random_tower(rng, t, size);
        let tag = format!("trial={t}");
        if let Err(e) = model_samples(t, rng, &model, cfg, trial) {
            trial.engine_error(&tag, &e);
        }
        if let Err(e) = oracle_samples(t, rng, trial) {
            trial.engine_error(&tag, &e);
        }
    })
}

/// Every third tower extends the standard three-generator prefix
/// (value, value, ball); the rest are fully random.
fn random_tower(rng: &mut ChaCha8Rng, t: u64, size: usize) -> Model {
    use sample::Step;
    if t % 3 == 0 {
        let mut steps = vec![Step::Value, Step::Value, Step::Ball];
        for _ in 0..size {
            steps.push(if rng.gen_bool(0.4) { Step::Ball } else { Step::Value });
        }
        sample::model_from_schedule(rng.gen(), &steps)
    } else {
        sample::random_model(rng.gen(), size)
    }
}

fn model_samples(
    t: u64,
    rng: &mut ChaCha8Rng,
    model: &Model,
    cfg: &SuiteConfig,
    trial: &mut Trial,
) -> Result<(), String> {
    let zero = Point::Finite(model.zero());

    // v(x) = inf exactly at x = 0, once per tower.
    let v0 = model.valuate(&zero).map_err(err_str)?;
    trial.check(v0 == Point::Infinity, &format!("trial={t} x=0"), "v(0) = inf", "finite value");

    for _ in 0..MODEL_SAMPLES {
        trial.bump("samples");
        let x = sampled_vector(rng, model, cfg);
        let y = sampled_vector(rng, model, cfg);
        let z = random_vector(rng, model, &cfg.bounds);
        let tag = format!(
            "trial={t} x={} y={} z={}",
            render_expr(model, &x),
            render_expr(model, &y),
            render_expr(model, &z)
        );

        let px = Point::Finite(x.clone());
        let py = Point::Finite(y.clone());
        let vx = model.valuate(&px).map_err(err_str)?;
        let vy = model.valuate(&py).map_err(err_str)?;

        // Zero law and positivity.
        trial.check(
            (vx == Point::Infinity) == x.is_zero(),
            &tag,
            "v(x) = inf iff x = 0",
            &format!("v(x) = {}", model_point(model, &vx)),
        );
        if let Point::Finite(w) = &vx {
            let vv = model.valuate(&vx).map_err(err_str)?;
            trial.check(
                vv == vx,
                &tag,
                "v(v(x)) = v(x)",
                &format!("v(v(x)) = {}", model_point(model, &vv)),
            );
            let pos = model.compare_vec(&model.zero(), w, 1).map_err(err_str)?;
            trial.check(pos == Ordering::Less, &tag, "0 <1 v(x)", &format!("{pos:?}"));
        }

        // Scalar invariance.
        let lambda = nonzero_scalar(rng, cfg.bounds.scalar_height as i64);
        let vlx = model.valuate(&Point::Finite(x.scale(&lambda))).map_err(err_str)?;
        trial.check(
            vlx == vx,
            &format!("{tag} lambda={lambda}"),
            "v(lambda*x) = v(x)",
            &format!("v(lambda*x) = {}", model_point(model, &vlx)),
        );

        // Ultrametric law, with equality when the values differ.
        let s = model.sum(&x, &y).map_err(err_str)?;
        let vs = model.valuate(&Point::Finite(s.clone())).map_err(err_str)?;
        let min = model.min0(&vx, &vy).map_err(err_str)?;
        let against_min = model.compare(&vs, &min, 0).map_err(err_str)?;
        trial.check(
            against_min != Ordering::Less,
            &tag,
            "v(x+y) >=0 min0(v(x), v(y))",
            &format!("v(x+y) = {}", model_point(model, &vs)),
        );
        if vx != vy {
            trial.check(
                vs == min,
                &tag,
                "v(x+y) = min0(v(x), v(y)) when v(x) != v(y)",
                &format!("v(x+y) = {}", model_point(model, &vs)),
            );
        }

        // Convexity on the sampled pair when it satisfies 0 <1 x <1 y,
        // and on a constructed pair that always does.
        let x_pos = model.compare_vec(&model.zero(), &x, 1).map_err(err_str)?;
        let x_below_y = model.compare_vec(&x, &y, 1).map_err(err_str)?;
        if x_pos == Ordering::Less && x_below_y == Ordering::Less {
            convexity(model, &x, &y, &tag, trial)?;
        }
        if !x.is_zero() && !y.is_zero() {
            let p = if x_pos == Ordering::Less { x.clone() } else { x.neg() };
            let w = match model.compare_vec(&model.zero(), &y, 1).map_err(err_str)? {
                Ordering::Less => y.clone(),
                _ => y.neg(),
            };
            let q = model.sum(&p, &w).map_err(err_str)?;
            let lo = model.compare_vec(&model.zero(), &p, 1).map_err(err_str)?;
            let hi = model.compare_vec(&p, &q, 1).map_err(err_str)?;
            trial.check(
                lo == Ordering::Less && hi == Ordering::Less,
                &tag,
                "constructed pair satisfies 0 <1 p <1 p+w",
                &format!("{lo:?} {hi:?}"),
            );
            if lo == Ordering::Less && hi == Ordering::Less {
                convexity(model, &p, &q, &tag, trial)?;
            }
        }

        // Translation and scaling compatibility in both orders.
        for order in 0..2 {
            let cmp = model.compare_vec(&x, &y, order).map_err(err_str)?;
            let xz = model.sum(&x, &z).map_err(err_str)?;
            let yz = model.sum(&y, &z).map_err(err_str)?;
            let shifted = model.compare_vec(&xz, &yz, order).map_err(err_str)?;
            trial.check(
                shifted == cmp,
                &tag,
                &format!("x+z, y+z compare like x, y in order {order}"),
                &format!("{cmp:?} became {shifted:?}"),
            );
            let sign = model.compare_vec(&model.zero(), &x, order).map_err(err_str)?;
            let scaled = model.compare_vec(&model.zero(), &x.scale(&lambda), order).map_err(err_str)?;
            let expect = if lambda.is_positive() { sign } else { sign.reverse() };
            trial.check(
                scaled == expect,
                &format!("{tag} lambda={lambda}"),
                &format!("sign of lambda*x in order {order} follows sign of lambda"),
                &format!("{scaled:?}"),
            );
        }

        // The two valuate implementations agree everywhere.
        for p in [&px, &py, &Point::Finite(s)] {
            let a = model.valuate(p).map_err(err_str)?;
            let b = model.valuate_recursive(p).map_err(err_str)?;
            trial.check(
                a == b,
                &format!("trial={t} p={}", model_point(model, p)),
                "valuate agrees with valuate_recursive",
                &format!("{} vs {}", model_point(model, &a), model_point(model, &b)),
            );
        }

        // inf is absorbing and strictly top in both orders.
        let inf = Point::Infinity;
        let vinf = model.valuate(&inf).map_err(err_str)?;
        trial.check(vinf == Point::Infinity, &tag, "v(inf) = inf", &model_point(model, &vinf));
        let absorbed = model
            .combine_points(&Scalar::zero(), &inf, &lambda, &py)
            .map_err(err_str)?;
        trial.check(
            absorbed == Point::Infinity,
            &tag,
            "0*inf + lambda*y = inf",
            &model_point(model, &absorbed),
        );
        for order in 0..2 {
            let top = model.compare(&inf, &px, order).map_err(err_str)?;
            trial.check(
                top == Ordering::Greater,
                &tag,
                &format!("inf is top in order {order}"),
                &format!("{top:?}"),
            );
        }
    }
    Ok(())
}

fn convexity(
    model: &Model,
    x: &crate::linear::Vector,
    y: &crate::linear::Vector,
    tag: &str,
    trial: &mut Trial,
) -> Result<(), String> {
    let vx = model.valuate(&Point::Finite(x.clone())).map_err(err_str)?;
    let vy = model.valuate(&Point::Finite(y.clone())).map_err(err_str)?;
    let cmp = model.compare(&vx, &vy, 0).map_err(err_str)?;
    trial.check(
        cmp != Ordering::Less,
        tag,
        "0 <1 x <1 y implies v(x) >=0 v(y)",
        &format!(
            "v(x) = {}, v(y) = {}",
            model_point(model, &vx),
            model_point(model, &vy)
        ),
    );
    trial.bump("convexity pairs");
    Ok(())
}

fn oracle_samples(t: u64, rng: &mut ChaCha8Rng, trial: &mut Trial) -> Result<(), String> {
    for _ in 0..ORACLE_SAMPLES {
        let x = random_lead(rng);
        let y = random_lead(rng);
        let lambda = nonzero_scalar(rng, 5);
        let tag = format!("trial={t} lead x={x} y={y} lambda={lambda}");

        let vx = x.lead_valuate();
        let vy = y.lead_valuate();
        trial.check(
            matches!(vx, LeadPoint::Infinity) == x.is_zero(),
            &tag,
            "lead v(x) = inf iff x = 0",
            &format!("{vx}"),
        );
        trial.check(vx.lead_valuate() == vx, &tag, "lead v(v(x)) = v(x)", &format!("{vx}"));
        if let LeadPoint::Finite(w) = &vx {
            trial.check(
                w.lead_sign1() == Ordering::Greater,
                &tag,
                "lead 0 <1 v(x)",
                &format!("{:?}", w.lead_sign1()),
            );
        }
        trial.check(
            x.scale(&lambda).lead_valuate() == vx,
            &tag,
            "lead v(lambda*x) = v(x)",
            &format!("{}", x.scale(&lambda).lead_valuate()),
        );

        let s = LeadVector::combine(&Scalar::one(), &x, &Scalar::one(), &y);
        let vs = s.lead_valuate();
        let min = match lead_value_compare(&vx, &vy).map_err(err_str)? {
            Ordering::Greater => vy.clone(),
            _ => vx.clone(),
        };
        let against_min = lead_value_compare(&vs, &min).map_err(err_str)?;
        trial.check(
            against_min != Ordering::Less,
            &tag,
            "lead v(x+y) >=0 min0(v(x), v(y))",
            &format!("{vs}"),
        );
        if lead_value_compare(&vx, &vy).map_err(err_str)? != Ordering::Equal {
            trial.check(vs == min, &tag, "lead v(x+y) = min0 when values differ", &format!("{vs}"));
        }

        // Scaling flips or keeps the second-order sign with the scalar.
        let expect = if lambda.is_positive() { x.lead_sign1() } else { x.lead_sign1().reverse() };
        trial.check(
            x.scale(&lambda).lead_sign1() == expect,
            &tag,
            "lead sign1(lambda*x) follows sign of lambda",
            &format!("{:?}", x.scale(&lambda).lead_sign1()),
        );

        // Convexity when the sampled pair satisfies 0 <1 x <1 y.
        let diff = LeadVector::combine(&Scalar::one(), &y, &-Scalar::one(), &x);
        if x.lead_sign1() == Ordering::Greater && diff.lead_sign1() == Ordering::Greater {
            let cmp = lead_value_compare(&vx, &vy).map_err(err_str)?;
            trial.check(
                cmp != Ordering::Less,
                &tag,
                "lead convexity: 0 <1 x <1 y implies v(x) >=0 v(y)",
                &format!("{cmp:?}"),
            );
            trial.bump("lead convexity pairs");
        }
    }
    Ok(())
}

/// A leading-term vector over a few small rational basis indices.
fn random_lead(rng: &mut ChaCha8Rng) -> LeadVector {
    let k = rng.gen_range(0..=3);
    let coords: Vec<(Scalar, Scalar)> = (0..k)
        .map(|_| {
            let num = rng.gen_range(-4i64..=4);
            let den = rng.gen_range(1i64..=3);
            (Scalar::new(num, den).expect("positive denominator"), nonzero_scalar(rng, 5))
        })
        .collect();
    LeadVector::from_coeffs(coords)
}

/// Mixes plain random vectors with zero so the boundary cases appear.
fn sampled_vector(rng: &mut ChaCha8Rng, model: &Model, cfg: &SuiteConfig) -> crate::linear::Vector {
    if rng.gen_range(0u32..12) == 0 {
        model.zero()
    } else {
        random_vector(rng, model, &cfg.bounds)
    }
}

/// Renders a point against the model for failure records.
fn model_point(model: &Model, p: &Point) -> String {
    crate::tower::render_point(model, p)
}
