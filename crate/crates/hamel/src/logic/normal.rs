//! Linear normal form for terms of the order reduct.
//!
//! A term without `v` denotes either `inf` or a finite rational
//! combination of names; `normalize_term` computes which, folding
//! absorption (any sum touching `inf` is `inf`, and `inf` is fixed by
//! every scaling, coefficient zero included) and cancelling coefficients.
//! The form is the workhorse of quantifier elimination and of the
//! witness-search evaluator; cancellation is sound when every name
//! denotes a finite element, which both consumers guarantee.

use std::collections::BTreeMap;

use super::{LogicError, Term};
use crate::scalar::Scalar;

pub(crate) type LinMap = BTreeMap<String, Scalar>;

/// A `v`-free term in normal form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum LinTerm {
    Inf,
    Lin(LinMap),
}

/// Normalize a `v`-free term; a `v` anywhere inside is an error.
pub fn normalize_term(t: &Term) -> Result<LinTerm, LogicError> {
    match t {
        Term::Zero => Ok(LinTerm::Lin(LinMap::new())),
        Term::Inf => Ok(LinTerm::Inf),
        Term::Var(name) => {
            let mut m = LinMap::new();
            m.insert(name.clone(), Scalar::one());
            Ok(LinTerm::Lin(m))
        }
        Term::Add(a, b) => match (normalize_term(a)?, normalize_term(b)?) {
            (LinTerm::Inf, _) | (_, LinTerm::Inf) => Ok(LinTerm::Inf),
            (LinTerm::Lin(ma), LinTerm::Lin(mb)) => Ok(LinTerm::Lin(map_add(&ma, &mb))),
        },
        Term::Scale(c, inner) => match normalize_term(inner)? {
            LinTerm::Inf => Ok(LinTerm::Inf),
            LinTerm::Lin(m) => Ok(LinTerm::Lin(map_scale(&m, c))),
        },
        Term::Val(_) => Err(LogicError::ValSubterm),
    }
}

pub(crate) fn map_add(a: &LinMap, b: &LinMap) -> LinMap {
    let mut out = a.clone();
    for (name, coeff) in b {
        let entry = out.entry(name.clone()).or_insert_with(Scalar::zero);
        *entry = entry.clone() + coeff.clone();
        if entry.is_zero() {
            out.remove(name);
        }
    }
    out
}

pub(crate) fn map_scale(m: &LinMap, c: &Scalar) -> LinMap {
    if c.is_zero() {
        return LinMap::new();
    }
    m.iter().map(|(name, coeff)| (name.clone(), coeff.clone() * c.clone())).collect()
}

pub(crate) fn map_neg(m: &LinMap) -> LinMap {
    map_scale(m, &Scalar::from_int(-1))
}

pub(crate) fn map_sub(a: &LinMap, b: &LinMap) -> LinMap {
    map_add(a, &map_neg(b))
}

/// Rebuild a canonical term from a map: unit coefficients bare, the rest
/// scaled, summands in name order, empty map rendered as `0`.
pub(crate) fn term_of_map(m: &LinMap) -> Term {
    let mut terms = m.iter().map(|(name, coeff)| {
        if *coeff == Scalar::one() {
            Term::var(name)
        } else {
            Term::scale(coeff.clone(), Term::var(name))
        }
    });
    match terms.next() {
        None => Term::Zero,
        Some(first) => terms.fold(first, Term::add),
    }
}
