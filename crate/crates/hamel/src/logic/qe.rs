//! Quantifier elimination for the order reduct.
//!
//! Works over `v`-free formulas whose quantifiers range over the finite
//! elements, while terms may still denote `inf`. Atoms are rewritten into
//! a normal form over linear maps that makes the infinity case-split
//! explicit: `EqZ(d)` asserts `d` denotes zero, `LtZ(i, d)` that it
//! denotes a finite element strictly below zero in order `i`, and
//! `EqInf`/`IsFin` split a map's value on infinity, which under
//! absorption happens exactly when some name in the map denotes `inf`.
//! Negation stays within the atom family, so a formula becomes a
//! disjunction of atom sets. A variable is eliminated from each conjunct
//! by solving an equality for it when one exists (guarding the solution
//! finite), and otherwise by Fourier-Motzkin within each order
//! independently, which the independence of the orders justifies.
//! A final pass folds the infinity atoms over the free variables, so the
//! published result is exact for assignments of finite elements.

use std::collections::BTreeSet;

use super::normal::{map_add, map_neg, map_scale, map_sub, normalize_term, term_of_map, LinMap, LinTerm};
use super::{Formula, LogicError, Structure, Term};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum AtomN {
    EqZ(LinMap),
    LtZ(usize, LinMap),
    EqInf(LinMap),
    IsFin(LinMap),
}

#[derive(Debug, Clone)]
enum Nnf {
    Bool(bool),
    Atom(AtomN),
    All(Vec<Nnf>),
    Any(Vec<Nnf>),
}

type Conjunct = BTreeSet<AtomN>;
type Dnf = BTreeSet<Conjunct>;

/// Zero map means the atom is decided; otherwise scale the leading
/// coefficient to one, which preserves both the zero set and absorption.
fn mk_eqz(d: LinMap) -> Nnf {
    match d.values().next() {
        None => Nnf::Bool(true),
        Some(lead) => {
            let inv = lead.recip().expect("maps store nonzero coefficients");
            Nnf::Atom(AtomN::EqZ(map_scale(&d, &inv)))
        }
    }
}

/// Positive scaling only: the order-`i` sign must survive.
fn mk_ltz(order: usize, d: LinMap) -> Nnf {
    match d.values().next() {
        None => Nnf::Bool(false),
        Some(lead) => {
            let inv = lead.abs().recip().expect("maps store nonzero coefficients");
            Nnf::Atom(AtomN::LtZ(order, map_scale(&d, &inv)))
        }
    }
}

/// Only the name set decides whether a map denotes `inf`, so coefficients
/// canonicalize to one.
fn support_map(m: &LinMap) -> LinMap {
    m.keys().map(|name| (name.clone(), Scalar::one())).collect()
}

fn mk_eqinf(m: &LinMap) -> Nnf {
    if m.is_empty() {
        Nnf::Bool(false)
    } else {
        Nnf::Atom(AtomN::EqInf(support_map(m)))
    }
}

fn mk_isfin(m: &LinMap) -> Nnf {
    if m.is_empty() {
        Nnf::Bool(true)
    } else {
        Nnf::Atom(AtomN::IsFin(support_map(m)))
    }
}

fn nnf_all(parts: Vec<Nnf>) -> Nnf {
    let mut out = Vec::new();
    for p in parts {
        match p {
            Nnf::Bool(true) => {}
            Nnf::Bool(false) => return Nnf::Bool(false),
            other => out.push(other),
        }
    }
    if out.is_empty() {
        Nnf::Bool(true)
    } else {
        Nnf::All(out)
    }
}

fn nnf_any(parts: Vec<Nnf>) -> Nnf {
    let mut out = Vec::new();
    for p in parts {
        match p {
            Nnf::Bool(false) => {}
            Nnf::Bool(true) => return Nnf::Bool(true),
            other => out.push(other),
        }
    }
    if out.is_empty() {
        Nnf::Bool(false)
    } else {
        Nnf::Any(out)
    }
}

/// Fold the infinity atoms away; sound once only free names remain and
/// those denote finite elements.
fn fold_inf(n: Nnf) -> Nnf {
    match n {
        Nnf::Atom(AtomN::EqInf(_)) => Nnf::Bool(false),
        Nnf::Atom(AtomN::IsFin(_)) => Nnf::Bool(true),
        Nnf::All(parts) => nnf_all(parts.into_iter().map(fold_inf).collect()),
        Nnf::Any(parts) => nnf_any(parts.into_iter().map(fold_inf).collect()),
        other => other,
    }
}

/// Negation normal form over the atom family. `positive` tracks polarity;
/// the rewriting keeps the infinity case-split explicit in both signs.
fn to_nnf(f: &Formula, positive: bool, orders: usize) -> Result<Nnf, LogicError> {
    match f {
        Formula::True => Ok(Nnf::Bool(positive)),
        Formula::False => Ok(Nnf::Bool(!positive)),
        Formula::Eq(t1, t2) => {
            let n1 = normalize_term(t1)?;
            let n2 = normalize_term(t2)?;
            Ok(match (n1, n2, positive) {
                (LinTerm::Inf, LinTerm::Inf, pos) => Nnf::Bool(pos),
                (LinTerm::Inf, LinTerm::Lin(m), true) | (LinTerm::Lin(m), LinTerm::Inf, true) => {
                    mk_eqinf(&m)
                }
                (LinTerm::Inf, LinTerm::Lin(m), false) | (LinTerm::Lin(m), LinTerm::Inf, false) => {
                    mk_isfin(&m)
                }
                (LinTerm::Lin(m1), LinTerm::Lin(m2), true) => {
                    let d = map_sub(&m1, &m2);
                    nnf_any(vec![mk_eqz(d), nnf_all(vec![mk_eqinf(&m1), mk_eqinf(&m2)])])
                }
                (LinTerm::Lin(m1), LinTerm::Lin(m2), false) => {
                    let d = map_sub(&m1, &m2);
                    let apart = nnf_any(vec![
                        mk_ltz(0, d.clone()),
                        mk_ltz(0, map_neg(&d)),
                        mk_eqinf(&d),
                    ]);
                    nnf_all(vec![apart, nnf_any(vec![mk_isfin(&m1), mk_isfin(&m2)])])
                }
            })
        }
        Formula::Lt(order, t1, t2) => {
            if *order >= orders {
                return Err(LogicError::OrderOutOfRange { order: *order, orders });
            }
            let n1 = normalize_term(t1)?;
            let n2 = normalize_term(t2)?;
            Ok(match (n1, n2, positive) {
                (LinTerm::Inf, _, pos) => Nnf::Bool(!pos),
                (LinTerm::Lin(m), LinTerm::Inf, true) => mk_isfin(&m),
                (LinTerm::Lin(m), LinTerm::Inf, false) => mk_eqinf(&m),
                (LinTerm::Lin(m1), LinTerm::Lin(m2), true) => {
                    let d = map_sub(&m1, &m2);
                    nnf_all(vec![
                        mk_isfin(&m1),
                        nnf_any(vec![mk_ltz(*order, d), mk_eqinf(&m2)]),
                    ])
                }
                (LinTerm::Lin(m1), LinTerm::Lin(m2), false) => {
                    let d = map_sub(&m1, &m2);
                    let at_least = nnf_any(vec![
                        mk_ltz(*order, map_neg(&d)),
                        mk_eqz(d.clone()),
                        mk_eqinf(&d),
                    ]);
                    nnf_any(vec![mk_eqinf(&m1), nnf_all(vec![at_least, mk_isfin(&m2)])])
                }
            })
        }
        Formula::Not(inner) => to_nnf(inner, !positive, orders),
        Formula::And(a, b) => {
            let na = to_nnf(a, positive, orders)?;
            let nb = to_nnf(b, positive, orders)?;
            Ok(if positive { nnf_all(vec![na, nb]) } else { nnf_any(vec![na, nb]) })
        }
        Formula::Or(a, b) => {
            let na = to_nnf(a, positive, orders)?;
            let nb = to_nnf(b, positive, orders)?;
            Ok(if positive { nnf_any(vec![na, nb]) } else { nnf_all(vec![na, nb]) })
        }
        Formula::Implies(a, b) => {
            let na = to_nnf(a, !positive, orders)?;
            let nb = to_nnf(b, positive, orders)?;
            Ok(if positive { nnf_any(vec![na, nb]) } else { nnf_all(vec![na, nb]) })
        }
        Formula::Exists(..) | Formula::Forall(..) => Err(LogicError::NotQuantifierFree),
    }
}

/// A conjunct asserting both `EqInf` and `IsFin` of one map is dead.
fn contradictory(c: &Conjunct) -> bool {
    c.iter().any(|a| match a {
        AtomN::EqInf(m) => c.contains(&AtomN::IsFin(m.clone())),
        _ => false,
    })
}

fn insert_conjunct(dnf: &mut Dnf, c: Conjunct) {
    if contradictory(&c) {
        return;
    }
    if dnf.iter().any(|existing| existing.is_subset(&c)) {
        return;
    }
    dnf.retain(|existing| !c.is_subset(existing));
    dnf.insert(c);
}

/// Disjunctive normal form as a set of atom sets; `None` encodes `true`
/// nowhere, an empty set encodes `false`, a set holding the empty
/// conjunct encodes `true`.
fn to_dnf(n: &Nnf) -> Dnf {
    match n {
        Nnf::Bool(false) => Dnf::new(),
        Nnf::Bool(true) => {
            let mut dnf = Dnf::new();
            dnf.insert(Conjunct::new());
            dnf
        }
        Nnf::Atom(a) => {
            let mut dnf = Dnf::new();
            dnf.insert(std::iter::once(a.clone()).collect());
            dnf
        }
        Nnf::Any(parts) => {
            let mut dnf = Dnf::new();
            for p in parts {
                for c in to_dnf(p) {
                    insert_conjunct(&mut dnf, c);
                }
            }
            dnf
        }
        Nnf::All(parts) => {
            let mut acc = Dnf::new();
            acc.insert(Conjunct::new());
            for p in parts {
                let rhs = to_dnf(p);
                let mut next = Dnf::new();
                for left in &acc {
                    for right in &rhs {
                        let mut joined = left.clone();
                        joined.extend(right.iter().cloned());
                        insert_conjunct(&mut next, joined);
                    }
                }
                acc = next;
            }
            acc
        }
    }
}

/// Push a constructor result into a conjunct; `false` kills it.
fn push_atom(c: &mut Conjunct, n: Nnf) -> bool {
    match n {
        Nnf::Bool(true) => true,
        Nnf::Bool(false) => false,
        Nnf::Atom(a) => {
            c.insert(a);
            true
        }
        Nnf::All(parts) => parts.into_iter().all(|p| push_atom(c, p)),
        Nnf::Any(_) => unreachable!("conjunct atoms never disjoin"),
    }
}

/// Substitute `x := e` (finite by guard) into a map containing `x`.
fn substitute(m: &LinMap, x: &str, e: &LinMap) -> LinMap {
    let mut rest = m.clone();
    let coeff = rest.remove(x).expect("substitution targets contain the variable");
    map_add(&rest, &map_scale(e, &coeff))
}

/// Eliminate `x` from one conjunct, `x` ranging over finite elements.
fn eliminate_conjunct(c: &Conjunct, x: &str) -> Option<Conjunct> {
    let mut with_x: Vec<AtomN> = Vec::new();
    let mut out = Conjunct::new();
    for a in c.iter().cloned() {
        let m = match &a {
            AtomN::EqZ(m) | AtomN::LtZ(_, m) | AtomN::EqInf(m) | AtomN::IsFin(m) => m,
        };
        if m.contains_key(x) {
            with_x.push(a);
        } else {
            out.insert(a);
        }
    }
    if with_x.is_empty() {
        return Some(out);
    }

    let solved = with_x.iter().find_map(|a| match a {
        AtomN::EqZ(d) => {
            let mut rest = d.clone();
            let coeff = rest.remove(x).unwrap();
            let inv = coeff.recip().expect("maps store nonzero coefficients");
            Some((d.clone(), map_scale(&rest, &-inv)))
        }
        _ => None,
    });

    if let Some((source, e)) = solved {
        // x = e with e finite settles every other occurrence.
        if !push_atom(&mut out, mk_isfin(&e)) {
            return None;
        }
        for a in with_x {
            let replaced = match &a {
                AtomN::EqZ(d) if *d == source => continue,
                AtomN::EqZ(d) => mk_eqz(substitute(d, x, &e)),
                AtomN::LtZ(order, d) => mk_ltz(*order, substitute(d, x, &e)),
                AtomN::EqInf(m) => mk_eqinf(&substitute(m, x, &e)),
                AtomN::IsFin(m) => mk_isfin(&substitute(m, x, &e)),
            };
            if !push_atom(&mut out, replaced) {
                return None;
            }
        }
        if contradictory(&out) {
            return None;
        }
        return Some(out);
    }

    // No equality to solve: infinity atoms drop to the residual names and
    // the order atoms leave Fourier-Motzkin residues per order.
    let mut lowers: Vec<(usize, LinMap)> = Vec::new();
    let mut uppers: Vec<(usize, LinMap)> = Vec::new();
    for a in with_x {
        match a {
            AtomN::EqZ(_) => unreachable!("handled by the solver branch"),
            AtomN::EqInf(m) => {
                let mut rest = m.clone();
                rest.remove(x);
                if !push_atom(&mut out, mk_eqinf(&rest)) {
                    return None;
                }
            }
            AtomN::IsFin(m) => {
                let mut rest = m.clone();
                rest.remove(x);
                if !push_atom(&mut out, mk_isfin(&rest)) {
                    return None;
                }
            }
            AtomN::LtZ(order, d) => {
                let mut rest = d.clone();
                let coeff = rest.remove(x).unwrap();
                let inv = coeff.recip().expect("maps store nonzero coefficients");
                let bound = map_scale(&rest, &-inv);
                // The atom demands a finite strict bound on x.
                if !push_atom(&mut out, mk_isfin(&bound)) {
                    return None;
                }
                if coeff.is_positive() {
                    uppers.push((order, bound));
                } else {
                    lowers.push((order, bound));
                }
            }
        }
    }
    for (lo_order, lo) in &lowers {
        for (up_order, up) in &uppers {
            if lo_order == up_order
                && !push_atom(&mut out, mk_ltz(*lo_order, map_sub(lo, up)))
            {
                return None;
            }
        }
    }
    if contradictory(&out) {
        return None;
    }
    Some(out)
}

fn eliminate_exists(x: &str, body: &Formula, orders: usize) -> Result<Formula, LogicError> {
    let nnf = to_nnf(body, true, orders)?;
    let mut out = Dnf::new();
    for c in to_dnf(&nnf) {
        if let Some(reduced) = eliminate_conjunct(&c, x) {
            insert_conjunct(&mut out, reduced);
        }
    }
    Ok(formula_of_dnf(&out))
}

/// Split a map on coefficient sign so atoms print as comparisons of two
/// nonnegative combinations.
fn sides_of_map(d: &LinMap) -> (Term, Term) {
    let mut pos = LinMap::new();
    let mut neg = LinMap::new();
    for (name, coeff) in d {
        if coeff.is_positive() {
            pos.insert(name.clone(), coeff.clone());
        } else {
            neg.insert(name.clone(), -coeff.clone());
        }
    }
    (term_of_map(&pos), term_of_map(&neg))
}

fn formula_of_atom(a: &AtomN) -> Formula {
    match a {
        AtomN::EqZ(d) => {
            let (lhs, rhs) = sides_of_map(d);
            Formula::Eq(lhs, rhs)
        }
        AtomN::LtZ(order, d) => {
            let (lhs, rhs) = sides_of_map(d);
            Formula::Lt(*order, lhs, rhs)
        }
        AtomN::EqInf(m) => Formula::Eq(term_of_map(m), Term::Inf),
        AtomN::IsFin(m) => Formula::not(Formula::Eq(term_of_map(m), Term::Inf)),
    }
}

fn formula_of_dnf(dnf: &Dnf) -> Formula {
    let mut conjuncts = dnf.iter().map(|c| {
        let mut atoms = c.iter().map(formula_of_atom);
        match atoms.next() {
            None => Formula::True,
            Some(first) => atoms.fold(first, Formula::and),
        }
    });
    match conjuncts.next() {
        None => Formula::False,
        Some(first) => conjuncts.fold(first, Formula::or),
    }
}

fn eliminate_all(f: &Formula, orders: usize) -> Result<Formula, LogicError> {
    Ok(match f {
        Formula::True | Formula::False | Formula::Eq(..) | Formula::Lt(..) => f.clone(),
        Formula::Not(inner) => Formula::not(eliminate_all(inner, orders)?),
        Formula::And(a, b) => {
            Formula::and(eliminate_all(a, orders)?, eliminate_all(b, orders)?)
        }
        Formula::Or(a, b) => Formula::or(eliminate_all(a, orders)?, eliminate_all(b, orders)?),
        Formula::Implies(a, b) => {
            Formula::implies(eliminate_all(a, orders)?, eliminate_all(b, orders)?)
        }
        Formula::Exists(x, body) => {
            let inner = eliminate_all(body, orders)?;
            eliminate_exists(x, &inner, orders)?
        }
        Formula::Forall(x, body) => {
            let inner = eliminate_all(body, orders)?;
            Formula::not(eliminate_exists(x, &Formula::not(inner), orders)?)
        }
    })
}

/// Eliminate the quantifiers of a `v`-free formula over `orders` orders.
///
/// Quantified variables range over the finite elements; the result
/// mentions only the free names of the input and is equivalent whenever
/// those names denote finite elements.
pub fn qe(f: &Formula, orders: usize) -> Result<Formula, LogicError> {
    if f.has_val() {
        return Err(LogicError::ValSubterm);
    }
    let eliminated = eliminate_all(f, orders)?;
    let folded = fold_inf(to_nnf(&eliminated, true, orders)?);
    let mut out = Dnf::new();
    for c in to_dnf(&folded) {
        insert_conjunct(&mut out, c);
    }
    Ok(formula_of_dnf(&out))
}

/// Decide a sentence of the order reduct by elimination to a constant.
pub fn decide_sentence(f: &Formula, orders: usize) -> Result<bool, LogicError> {
    let free = f.free_vars();
    if !free.is_empty() {
        let names = free.into_iter().collect::<Vec<_>>().join(", ");
        return Err(LogicError::NotASentence(names));
    }
    match qe(f, orders)? {
        Formula::True => Ok(true),
        Formula::False => Ok(false),
        other => unreachable!("a sentence eliminates to a constant, got {other}"),
    }
}

/// Check a formula fits a structure: order indices in range, `v` only
/// where the structure interprets it.
pub fn check_formula<S: Structure>(structure: &S, f: &Formula) -> Result<(), LogicError> {
    if f.has_val() && !structure.has_valuation() {
        return Err(LogicError::ValUnsupported);
    }
    fn orders_used(f: &Formula, max: &mut Option<usize>) {
        match f {
            Formula::True | Formula::False | Formula::Eq(..) => {}
            Formula::Lt(order, ..) => {
                *max = Some(max.map_or(*order, |m: usize| m.max(*order)));
            }
            Formula::Not(inner) | Formula::Exists(_, inner) | Formula::Forall(_, inner) => {
                orders_used(inner, max)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                orders_used(a, max);
                orders_used(b, max);
            }
        }
    }
    let mut max = None;
    orders_used(f, &mut max);
    if let Some(order) = max {
        if order >= structure.orders() {
            return Err(LogicError::OrderOutOfRange { order, orders: structure.orders() });
        }
    }
    Ok(())
}
