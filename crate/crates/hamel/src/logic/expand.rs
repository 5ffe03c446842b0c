//! Quantified truth by witness search, used to cross-check elimination.
//!
//! A quantifier over the order reduct only needs finitely many candidate
//! witnesses: the boundary expressions solvable from the atoms and one
//! representative of every joint order cell those boundaries carve out.
//! Representatives of open cells generally live in a conservative
//! extension of the model, so each is realized by adjoining independent
//! witnesses to a copy, which leaves every comparison between existing
//! elements unchanged. Boundary sets are closed under substitution
//! through nested quantifiers, making atom truth constant on each cell.
//! Quantifiers range over the finite elements; `v` is not searched, so
//! formulas with quantifiers must be `v`-free, and the model must carry
//! exactly the two orders the witness operations serve.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::eval::{evaluate_qf, Structure};
use super::normal::{map_scale, map_sub, normalize_term, LinMap, LinTerm};
use super::{Assignment, Formula, LogicError};
use crate::linear::{Bound, Point, Vector};
use crate::scalar::Scalar;
use crate::tower::Model;

/// Truth of a formula in a model, searching quantifier witnesses.
pub fn holds(model: &Model, f: &Formula, sigma: &Assignment<Point>) -> Result<bool, LogicError> {
    if f.has_val() && !f.is_quantifier_free() {
        return Err(LogicError::ValSubterm);
    }
    if !f.is_quantifier_free() && model.orders() != 2 {
        return Err(LogicError::OrderOutOfRange { order: 1, orders: model.orders() });
    }
    walk(model, f, sigma)
}

fn walk(model: &Model, f: &Formula, sigma: &Assignment<Point>) -> Result<bool, LogicError> {
    match f {
        Formula::Not(inner) => Ok(!walk(model, inner, sigma)?),
        Formula::And(a, b) => Ok(walk(model, a, sigma)? && walk(model, b, sigma)?),
        Formula::Or(a, b) => Ok(walk(model, a, sigma)? || walk(model, b, sigma)?),
        Formula::Implies(a, b) => Ok(!walk(model, a, sigma)? || walk(model, b, sigma)?),
        Formula::Exists(x, body) => {
            search(model, x, body, sigma, |found| found, false)
        }
        Formula::Forall(x, body) => {
            search(model, x, body, sigma, |found| !found, true)
        }
        qf => evaluate_qf(model, qf, sigma),
    }
}

/// Try every candidate for `x`; `stop` says which body truth settles the
/// quantifier, `default` is the answer when no candidate settles it.
fn search(
    model: &Model,
    x: &str,
    body: &Formula,
    sigma: &Assignment<Point>,
    stop: impl Fn(bool) -> bool,
    default: bool,
) -> Result<bool, LogicError> {
    let mut boundaries = BTreeSet::new();
    boundary_maps(body, x, &mut boundaries)?;
    boundaries.insert(LinMap::new());

    let mut points = BTreeSet::new();
    for m in &boundaries {
        if let Point::Finite(v) = eval_map(model, m, sigma)? {
            points.insert(v);
        }
    }

    // Boundary values themselves first: they are the only candidates that
    // can satisfy equalities.
    for v in &points {
        let mut inner = sigma.clone();
        inner.insert(x.to_string(), Point::Finite(v.clone()));
        if stop(walk(model, body, &inner)?) {
            return Ok(!default);
        }
    }

    // Then one representative per joint open cell, realized by adjoining
    // an independent witness to a copy of the model.
    let cells0 = intervals(model, &points, 0)?;
    let cells1 = intervals(model, &points, 1)?;
    for iv0 in &cells0 {
        for iv1 in &cells1 {
            let (extended, witness) =
                model.independence_witness(iv0.clone(), iv1.clone())?;
            let mut inner = sigma.clone();
            inner.insert(x.to_string(), Point::Finite(witness));
            if stop(walk(&extended, body, &inner)?) {
                return Ok(!default);
            }
        }
    }
    Ok(default)
}

/// The open intervals an order's sorted boundary values carve out.
fn intervals(
    model: &Model,
    points: &BTreeSet<Vector>,
    order: usize,
) -> Result<Vec<(Bound, Bound)>, LogicError> {
    let mut sorted: Vec<Vector> = Vec::new();
    'insert: for v in points {
        for (i, u) in sorted.iter().enumerate() {
            match model.compare_vec(v, u, order)? {
                Ordering::Less => {
                    sorted.insert(i, v.clone());
                    continue 'insert;
                }
                Ordering::Equal => continue 'insert,
                Ordering::Greater => {}
            }
        }
        sorted.push(v.clone());
    }
    let mut out = Vec::new();
    let mut lower = Bound::NegInfinite;
    for v in sorted {
        out.push((lower, Bound::Finite(v.clone())));
        lower = Bound::Finite(v);
    }
    out.push((lower, Bound::PosInfinite));
    Ok(out)
}

fn eval_map(
    model: &Model,
    m: &LinMap,
    sigma: &Assignment<Point>,
) -> Result<Point, LogicError> {
    let mut acc = Point::Finite(model.zero());
    for (name, coeff) in m {
        let p = sigma
            .get(name)
            .cloned()
            .or_else(|| Structure::resolve_name(model, name))
            .ok_or_else(|| LogicError::UnboundVariable(name.clone()))?;
        acc = model.combine_points(&Scalar::one(), &acc, coeff, &p)?;
    }
    Ok(acc)
}

/// Expressions whose values bound `x` in some atom, closed through
/// nested quantifiers by substitution.
fn boundary_maps(
    f: &Formula,
    x: &str,
    out: &mut BTreeSet<LinMap>,
) -> Result<(), LogicError> {
    match f {
        Formula::True | Formula::False => Ok(()),
        Formula::Eq(t1, t2) | Formula::Lt(_, t1, t2) => {
            let (LinTerm::Lin(m1), LinTerm::Lin(m2)) =
                (normalize_term(t1)?, normalize_term(t2)?)
            else {
                return Ok(());
            };
            let d = map_sub(&m1, &m2);
            if let Some(coeff) = d.get(x) {
                let mut rest = d.clone();
                let inv = coeff.recip().expect("maps store nonzero coefficients");
                rest.remove(x);
                out.insert(map_scale(&rest, &-inv));
            }
            Ok(())
        }
        Formula::Not(inner) => boundary_maps(inner, x, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            boundary_maps(a, x, out)?;
            boundary_maps(b, x, out)
        }
        Formula::Exists(y, body) | Formula::Forall(y, body) => {
            if y == x {
                return Ok(());
            }
            let mut for_x = BTreeSet::new();
            boundary_maps(body, x, &mut for_x)?;
            let mut for_y = BTreeSet::new();
            boundary_maps(body, y, &mut for_y)?;
            for t in for_x {
                match t.get(y) {
                    None => {
                        out.insert(t);
                    }
                    Some(coeff) => {
                        let coeff = coeff.clone();
                        let mut rest = t.clone();
                        rest.remove(y);
                        for s in &for_y {
                            if s.contains_key(x) {
                                continue;
                            }
                            let joined = super::normal::map_add(&rest, &map_scale(s, &coeff));
                            if !joined.contains_key(x) {
                                out.insert(joined);
                            }
                        }
                    }
                }
            }
            Ok(())
        }
    }
}
