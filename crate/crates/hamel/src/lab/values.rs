//! Value-set suites: linear independence of the valuation values and the
//! exact growth bound under subspace extension.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::lab::sample::{
    self, generator_values, nonzero_scalar, random_vector, standard_fixture,
};
use crate::lab::{err_str, run_trials, Report, SuiteConfig, Trial};
use crate::linear::{Point, Vector};
use crate::scalar::Scalar;
use crate::tower::{render_expr, Model};

/// Combinations sampled per random tower.
const COMBOS_PER_TRIAL: usize = 20;

/// Checks that nonzero combinations of distinct generator values valuate
/// to the first-order minimum of the participating values, hence never
/// vanish: the value set is linearly independent.
pub fn run_value_independence(cfg: &SuiteConfig) -> Report {
    run_trials("value-independence", cfg, |t, rng, trial| {
        if t == 0 {
            if let Err(e) = pinned_independence(trial) {
                trial.engine_error("trial=0 pinned", &e);
            }
        }
        let size = rng.gen_range(1..=cfg.bounds.max_gens.max(1));
        let model = sample::random_model(rng.gen(), size);
        if let Err(e) = independence_samples(t, rng, &model, cfg, trial) {
            trial.engine_error(&format!("trial={t}"), &e);
        }
    })
}

fn independence_samples(
    t: u64,
    rng: &mut ChaCha8Rng,
    model: &Model,
    cfg: &SuiteConfig,
    trial: &mut Trial,
) -> Result<(), String> {
    let values = generator_values(model);
    for _ in 0..COMBOS_PER_TRIAL {
        trial.bump("combinations");
        let k = rng.gen_range(1..=values.len().min(4));
        let picked: Vec<&Vector> = values.choose_multiple(rng, k).collect();
        let mut sum = model.zero();
        let mut min = picked[0].clone();
        let mut rendered = Vec::new();
        for h in &picked {
            let lambda = nonzero_scalar(rng, cfg.bounds.scalar_height as i64);
            sum = model.combine(&Scalar::one(), &sum, &lambda, h).map_err(err_str)?;
            if model.compare_vec(h, &min, 0).map_err(err_str)? == Ordering::Less {
                min = (*h).clone();
            }
            rendered.push(format!("{lambda}*({})", render_expr(model, h)));
        }
        let tag = format!("trial={t} sum={}", rendered.join(" + "));
        trial.check(!sum.is_zero(), &tag, "combination is nonzero", "zero");
        let v = model.valuate(&Point::Finite(sum)).map_err(err_str)?;
        let expected = Point::Finite(min);
        trial.check(
            v == expected,
            &tag,
            &format!("v(sum) = {}", crate::tower::render_point(model, &expected)),
            &crate::tower::render_point(model, &v),
        );
    }
    Ok(())
}

/// The fixed instances: a single scaled value, and `2*h1 - 3*h2` in the
/// standard three-generator tower.
fn pinned_independence(trial: &mut Trial) -> Result<(), String> {
    let (m, h1, h2, _) = standard_fixture();
    let v = m.valuate(&Point::Finite(h1.scale(&Scalar::from_int(7)))).map_err(err_str)?;
    trial.check(v == Point::Finite(h1.clone()), "pinned v(7*h1)", "h1", "other");
    let combo = m
        .combine(&Scalar::from_int(2), &h1, &Scalar::from_int(-3), &h2)
        .map_err(err_str)?;
    let v = m.valuate(&Point::Finite(combo)).map_err(err_str)?;
    trial.check(v == Point::Finite(h1), "pinned v(2*h1 - 3*h2)", "h1", "other");
    Ok(())
}

/// Checks the exact bound on how many new values a subspace extension can
/// add: adjoining `m` vectors grows the value set by at most `m`. Forced
/// schedules exhibit both boundary shapes, growth zero and growth `m`.
pub fn run_value_growth(cfg: &SuiteConfig) -> Report {
    run_trials("value-growth", cfg, |t, rng, trial| {
        if t == 0 {
            if let Err(e) = pinned_growth(trial) {
                trial.engine_error("trial=0 pinned", &e);
            }
        }
        let outcome = match t % 5 {
            0 => saturated_instance(t, rng, trial),
            1 => vanishing_instance(t, rng, cfg, trial),
            _ => random_instance(t, rng, cfg, trial),
        };
        if let Err(e) = outcome {
            trial.engine_error(&format!("trial={t}"), &e);
        }
    })
}

/// Growth of the value set from `g0` to `g0` plus the extra vectors.
fn growth(model: &Model, g0: &[Vector], extra: &[Vector]) -> Result<usize, String> {
    let before: BTreeSet<Vector> = model.subspace_values(g0).map_err(err_str)?;
    let mut both: Vec<Vector> = g0.to_vec();
    both.extend_from_slice(extra);
    let after = model.subspace_values(&both).map_err(err_str)?;
    Ok(after.difference(&before).count())
}

/// All-value tower, one base generator, `m` fresh value generators: every
/// extra vector carries a brand-new value, so growth is exactly `m`.
fn saturated_instance(t: u64, rng: &mut ChaCha8Rng, trial: &mut Trial) -> Result<(), String> {
    let m = 1 + ((t / 5) % 4) as usize;
    let steps = vec![sample::Step::Value; m + 2];
    let model = sample::model_from_schedule(rng.gen(), &steps);
    let gens: Vec<Vector> = model.gen_ids().map(|g| model.unit(g)).collect();
    let g0 = vec![gens[0].clone()];
    let extra: Vec<Vector> = gens[1..=m].to_vec();
    let got = growth(&model, &g0, &extra)?;
    let tag = format!("trial={t} forced saturated m={m}");
    trial.check(got == m, &tag, &format!("growth = {m}"), &format!("growth = {got}"));
    trial.bump("saturated");
    trial.bump(&format!("growth={got}"));
    Ok(())
}

/// Extra vectors drawn from the span of the base: growth is exactly zero.
fn vanishing_instance(
    t: u64,
    rng: &mut ChaCha8Rng,
    cfg: &SuiteConfig,
    trial: &mut Trial,
) -> Result<(), String> {
    let size = rng.gen_range(2..=cfg.bounds.max_gens.max(2));
    let model = sample::random_model(rng.gen(), size);
    let k = rng.gen_range(1..=3);
    let g0: Vec<Vector> = (0..k).map(|_| random_vector(rng, &model, &cfg.bounds)).collect();
    let m = rng.gen_range(1..=4);
    let mut extra = Vec::with_capacity(m);
    for _ in 0..m {
        let mut c = model.zero();
        for v in &g0 {
            if rng.gen_bool(0.7) {
                let lambda = nonzero_scalar(rng, 3);
                c = model.combine(&Scalar::one(), &c, &lambda, v).map_err(err_str)?;
            }
        }
        extra.push(c);
    }
    let got = growth(&model, &g0, &extra)?;
    let tag = format!("trial={t} forced vanishing m={m}");
    trial.check(got == 0, &tag, "growth = 0", &format!("growth = {got}"));
    trial.bump("vanishing");
    trial.bump(&format!("growth={got}"));
    Ok(())
}

fn random_instance(
    t: u64,
    rng: &mut ChaCha8Rng,
    cfg: &SuiteConfig,
    trial: &mut Trial,
) -> Result<(), String> {
    let size = rng.gen_range(1..=cfg.bounds.max_gens.max(1));
    let model = sample::random_model(rng.gen(), size);
    let k = rng.gen_range(0..=5);
    let g0: Vec<Vector> = (0..k).map(|_| random_vector(rng, &model, &cfg.bounds)).collect();
    let m = rng.gen_range(0..=4);
    let extra: Vec<Vector> = (0..m).map(|_| random_vector(rng, &model, &cfg.bounds)).collect();
    let got = growth(&model, &g0, &extra)?;
    let rendered: Vec<String> = extra.iter().map(|c| render_expr(&model, c)).collect();
    let tag = format!("trial={t} m={m} extra=[{}]", rendered.join(", "));
    trial.check(got <= m, &tag, &format!("growth <= {m}"), &format!("growth = {got}"));
    trial.bump(&format!("growth={got}"));
    Ok(())
}

/// The fixed instances in the standard tower: `h2` adds one value over
/// `span(h1)`, while `h2 + 5t` valuates to `h1` and adds none.
fn pinned_growth(trial: &mut Trial) -> Result<(), String> {
    let (m, h1, h2, t) = standard_fixture();
    let got = growth(&m, &[h1.clone()], &[h2.clone()])?;
    trial.check(got == 1, "pinned growth of h2 over span(h1)", "1", &got.to_string());
    let c = m.combine(&Scalar::one(), &h2, &Scalar::from_int(5), &t).map_err(err_str)?;
    let got = growth(&m, &[h1.clone()], &[c])?;
    trial.check(got == 0, "pinned growth of h2 + 5*t over span(h1)", "0", &got.to_string());
    let got = growth(&m, &[h1], &[])?;
    trial.check(got == 0, "pinned growth with no extra vectors", "0", &got.to_string());
    Ok(())
}
