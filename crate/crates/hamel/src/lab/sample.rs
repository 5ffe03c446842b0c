//! Seeded random construction of models, elements, and formulas.
//!
//! Everything here is deterministic in the seed: the same seed always
//! rebuilds the same tower, element, or formula, which is what makes
//! suite reports replayable. Models are grown one adjunction at a time,
//! with every cut parameter drawn from elements that already exist.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lab::SizeBounds;
use crate::linear::{GenId, Point, Vector};
use crate::logic::{Formula, Term};
use crate::scalar::Scalar;
use crate::tower::{AlphaCut, Cut, Model};

/// One adjunction in a construction schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// A generator that is its own valuation value.
    Value,
    /// A generator of prescribed value inside an existing ball.
    Ball,
    /// A plain-mode generator realizing one cut per order.
    Free,
}

/// Seeded pseudo-random generator for trial `t` of a suite run.
pub(crate) fn trial_rng(seed: u64, t: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t.wrapping_add(1));
    rng
}

/// Builds a model by following `steps`, drawing cut parameters from the
/// part of the tower built so far.
///
/// A schedule containing any `Free` step builds a plain two-order model
/// and treats every step as free; otherwise the model is a Hamel space.
/// A `Ball` step that arrives before any value exists is promoted to a
/// `Value` step, so every schedule is realizable.
pub fn model_from_schedule(seed: u64, steps: &[Step]) -> Model {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if steps.contains(&Step::Free) {
        let mut model = Model::new_plain(2).expect("two orders are supported");
        for _ in steps {
            let cuts = vec![random_cut(&mut rng, &model, 0), random_cut(&mut rng, &model, 1)];
            model = model.adjoin_free(None, cuts).expect("fresh cuts are valid").0;
        }
        return model;
    }
    let mut model = Model::new_hamel();
    for step in steps {
        model = match step {
            Step::Ball => random_ball_step(&mut rng, &model),
            _ => random_value_step(&mut rng, &model),
        };
    }
    model
}

/// A random Hamel-mode tower of `size` generators.
pub fn random_model(seed: u64, size: usize) -> Model {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps = Vec::with_capacity(size);
    for i in 0..size {
        let step = if i > 0 && rng.gen_bool(0.4) { Step::Ball } else { Step::Value };
        steps.push(step);
    }
    model_from_schedule(rng.gen(), &steps)
}

/// A random plain-mode tower of `size` generators over two orders.
pub fn random_plain_model(seed: u64, size: usize) -> Model {
    model_from_schedule(seed, &vec![Step::Free; size])
}

/// The three-generator fixture `h1, h2, t` used by the pinned instances:
/// two stacked values and one ball element of value `h1`.
pub(crate) fn standard_fixture() -> (Model, Vector, Vector, Vector) {
    let m = Model::new_hamel();
    let (m, h1) = m.adjoin_value(Some("h1"), Cut::below_weak(0, m.zero())).expect("fresh");
    let (m, h2) = m.adjoin_value(Some("h2"), Cut::below_weak(0, h1.clone())).expect("fresh");
    let acut = AlphaCut { alpha: h1.clone(), pivot: m.zero(), weak: true };
    let (m, t) = m.adjoin_ball(Some("t"), acut, Cut::below_weak(0, h2.clone())).expect("fresh");
    (m, h1, h2, t)
}

fn random_value_step(rng: &mut ChaCha8Rng, model: &Model) -> Model {
    let cut0 = random_cut(rng, model, 0);
    model.adjoin_value(None, cut0).expect("fresh value cuts are valid").0
}

fn random_ball_step(rng: &mut ChaCha8Rng, model: &Model) -> Model {
    let values = generator_values(model);
    let Some(alpha) = values.choose(rng).cloned() else {
        return random_value_step(rng, model);
    };
    let pivot = random_pivot(rng, model, &alpha);
    let acut = AlphaCut { alpha, pivot, weak: rng.gen_bool(0.7) };
    let cut0 = random_cut(rng, model, 0);
    model.adjoin_ball(None, acut, cut0).expect("alpha is a value and the pivot is in its ball").0
}

/// The distinct valuation values realized by the generators so far.
pub(crate) fn generator_values(model: &Model) -> Vec<Vector> {
    let mut values = Vec::new();
    for g in model.gen_ids() {
        let v = model.gen_value(g).expect("hamel generators carry values");
        if !values.contains(&v) {
            values.push(v);
        }
    }
    values
}

/// A point of value at least `alpha`: zero, or a scaled generator whose
/// value does not fall below `alpha` in the first order.
fn random_pivot(rng: &mut ChaCha8Rng, model: &Model, alpha: &Vector) -> Vector {
    if rng.gen_bool(0.6) {
        return model.zero();
    }
    let mut candidates = vec![model.zero()];
    for g in model.gen_ids() {
        let value = model.gen_value(g).expect("hamel generators carry values");
        if model.compare_vec(&value, alpha, 0).expect("same model") != std::cmp::Ordering::Less {
            candidates.push(model.unit(g));
        }
    }
    let mut pivot = candidates.choose(rng).cloned().expect("zero is always present");
    if !pivot.is_zero() && rng.gen_bool(0.3) {
        pivot = pivot.scale(&nonzero_scalar(rng, 3));
    }
    pivot
}

/// A principal cut for `order` anchored at an existing element.
pub(crate) fn random_cut(rng: &mut ChaCha8Rng, model: &Model, order: usize) -> Cut {
    match rng.gen_range(0u32..10) {
        0 => Cut::everything(order),
        1 => Cut::nothing(order),
        n => {
            let anchor = random_anchor(rng, model);
            if n < 6 {
                Cut::below_weak(order, anchor)
            } else {
                Cut::below_strict(order, anchor)
            }
        }
    }
}

/// An element of the model built so far: zero, a unit, or a short combination.
fn random_anchor(rng: &mut ChaCha8Rng, model: &Model) -> Vector {
    if model.is_empty() || rng.gen_bool(0.25) {
        return model.zero();
    }
    let bounds = SizeBounds { max_support: 2, scalar_height: 3, ..SizeBounds::default() };
    random_vector(rng, model, &bounds)
}

/// A chain of fresh values, each adjoined strictly above the previous
/// one in the first order.
pub(crate) fn increasing_values(model: &Model, n: usize) -> Result<(Model, Vec<Vector>), String> {
    let mut m = model.clone();
    let mut out = Vec::with_capacity(n);
    let mut anchor = m.zero();
    for _ in 0..n {
        let (next, h) =
            m.adjoin_value(None, Cut::below_weak(0, anchor)).map_err(|e| e.to_string())?;
        m = next;
        anchor = h.clone();
        out.push(h);
    }
    Ok((m, out))
}

/// A chain of ball elements of fixed value `alpha`, each pivoted on the
/// previous one, hence strictly increasing in the second order.
pub(crate) fn ball_chain(
    rng: &mut ChaCha8Rng,
    model: &Model,
    alpha: &Vector,
    n: usize,
) -> Result<(Model, Vec<Vector>), String> {
    let mut m = model.clone();
    let mut out = Vec::with_capacity(n);
    let mut pivot = m.zero();
    for _ in 0..n {
        let acut = AlphaCut { alpha: alpha.clone(), pivot, weak: true };
        let cut0 = random_cut(rng, &m, 0);
        let (next, x) = m.adjoin_ball(None, acut, cut0).map_err(|e| e.to_string())?;
        m = next;
        pivot = x.clone();
        out.push(x);
    }
    Ok((m, out))
}

/// A nonzero scalar of numerator and denominator height at most `height`.
pub(crate) fn nonzero_scalar(rng: &mut ChaCha8Rng, height: i64) -> Scalar {
    let height = height.max(1);
    let num = rng.gen_range(1..=height) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den = rng.gen_range(1..=height);
    Scalar::new(num, den).expect("denominator is positive")
}

/// A vector supported on at most `bounds.max_support` generators.
pub(crate) fn random_vector(rng: &mut ChaCha8Rng, model: &Model, bounds: &SizeBounds) -> Vector {
    let gens: Vec<GenId> = model.gen_ids().collect();
    if gens.is_empty() {
        return model.zero();
    }
    let cap = bounds.max_support.min(gens.len()).max(1);
    let k = rng.gen_range(1..=cap);
    let picked = gens.choose_multiple(rng, k);
    let coords: Vec<(GenId, Scalar)> =
        picked.map(|g| (*g, nonzero_scalar(rng, bounds.scalar_height as i64))).collect();
    model.element(coords)
}

/// A nonzero vector, retrying the random draw a few times before falling
/// back to a generator unit.
pub(crate) fn nonzero_vector(rng: &mut ChaCha8Rng, model: &Model, bounds: &SizeBounds) -> Vector {
    for _ in 0..8 {
        let v = random_vector(rng, model, bounds);
        if !v.is_zero() {
            return v;
        }
    }
    model.unit(model.gen_ids().next().expect("nonzero draws need a generator"))
}

/// A point: usually finite, sometimes zero or the point at infinity.
pub(crate) fn random_point(rng: &mut ChaCha8Rng, model: &Model, bounds: &SizeBounds) -> Point {
    match rng.gen_range(0u32..20) {
        0 => Point::Infinity,
        1 | 2 => Point::Finite(model.zero()),
        _ => Point::Finite(random_vector(rng, model, bounds)),
    }
}

const FREE_NAMES: [&str; 3] = ["a", "b", "c"];
const BOUND_NAMES: [&str; 3] = ["x", "y", "z"];

/// A random formula of the order reduct: no valuation subterms, orders 0
/// and 1 only. Most draws carry one quantifier; deeper prefixes are rare
/// and clamped to `max_depth`, since witness search grows exponentially
/// with the prefix.
pub(crate) fn random_formula(rng: &mut ChaCha8Rng, max_depth: usize) -> Formula {
    let mut scope: Vec<&str> = FREE_NAMES.into();
    let depth = match rng.gen_range(0u32..100) {
        0..=29 => 0,
        30..=81 => 1,
        82..=96 => 2,
        _ => 3,
    }
    .min(max_depth);
    if depth == 0 {
        let atoms = rng.gen_range(1..=3);
        random_matrix(rng, &scope, atoms)
    } else {
        random_prefix(rng, &mut scope, depth)
    }
}

/// A random sentence: a quantifier prefix over a matrix with no free
/// names left, at most two quantifiers deep.
pub(crate) fn random_sentence(rng: &mut ChaCha8Rng) -> Formula {
    let vars = rng.gen_range(1..=2usize);
    let scope: Vec<&str> = BOUND_NAMES[..vars].to_vec();
    let atoms = rng.gen_range(1..=3);
    let mut sentence = random_matrix(rng, &scope, atoms);
    for name in scope.into_iter().rev() {
        sentence = if rng.gen_bool(0.5) {
            Formula::exists(name, sentence)
        } else {
            Formula::forall(name, sentence)
        };
    }
    sentence
}

fn random_prefix<'a>(rng: &mut ChaCha8Rng, scope: &mut Vec<&'a str>, depth: usize) -> Formula {
    let var = BOUND_NAMES[scope.len() - FREE_NAMES.len()];
    scope.push(var);
    let atoms = if depth > 1 { rng.gen_range(1..=2) } else { rng.gen_range(1..=3) };
    let body = if depth > 1 {
        let inner = random_prefix(rng, scope, depth - 1);
        match rng.gen_range(0u32..3) {
            0 => inner,
            1 => Formula::and(random_matrix(rng, scope, 1), inner),
            _ => Formula::or(inner, random_matrix(rng, scope, 1)),
        }
    } else {
        random_matrix(rng, scope, atoms)
    };
    scope.pop();
    if rng.gen_bool(0.5) {
        Formula::exists(var, body)
    } else {
        Formula::forall(var, body)
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, scope: &[&str], atoms: usize) -> Formula {
    let mut f = random_atom(rng, scope);
    for _ in 1..atoms {
        let g = random_atom(rng, scope);
        f = match rng.gen_range(0u32..10) {
            0..=3 => Formula::and(f, g),
            4..=7 => Formula::or(f, g),
            8 => Formula::implies(f, g),
            _ => Formula::and(Formula::not(f), g),
        };
    }
    if rng.gen_bool(0.15) {
        f = Formula::not(f);
    }
    f
}

fn random_atom(rng: &mut ChaCha8Rng, scope: &[&str]) -> Formula {
    let t1 = random_linear_term(rng, scope);
    let t2 = random_linear_term(rng, scope);
    match rng.gen_range(0u32..10) {
        0..=2 => Formula::Eq(t1, t2),
        3..=6 => Formula::Lt(0, t1, t2),
        _ => Formula::Lt(1, t1, t2),
    }
}

fn random_linear_term(rng: &mut ChaCha8Rng, scope: &[&str]) -> Term {
    if rng.gen_range(0u32..25) == 0 {
        return Term::Inf;
    }
    let k = rng.gen_range(0..=2usize.min(scope.len()));
    if k == 0 {
        return Term::Zero;
    }
    let mut term: Option<Term> = None;
    for name in scope.choose_multiple(rng, k) {
        let coeff = nonzero_scalar(rng, 3);
        let part = if coeff == Scalar::one() {
            Term::var(name)
        } else {
            Term::scale(coeff, Term::var(name))
        };
        term = Some(match term {
            None => part,
            Some(t) => Term::add(t, part),
        });
    }
    term.expect("k is positive")
}
