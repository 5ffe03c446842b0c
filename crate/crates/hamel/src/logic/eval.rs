//! Quantifier-free evaluation against a structure.
//!
//! A structure is anything that can resolve names, combine elements,
//! compare them per order, and (when it carries one) apply the
//! valuation. The finitely presented towers and the leading-term oracle
//! both qualify, so the same formula can be checked against either.
//! Assignments shadow generator names: a name is looked up in the
//! assignment first and only then among the structure's constants.

use std::cmp::Ordering;

use super::{Assignment, Formula, LogicError, Term};
use crate::linear::Point;
use crate::oracle::{lead_value_compare, parse_index, LeadPoint, LeadVector, Oracle, OracleError};
use crate::scalar::Scalar;
use crate::tower::{render_point, Model};

/// An interpretation of the language: elements, orders, and optionally `v`.
pub trait Structure {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn orders(&self) -> usize;
    fn has_valuation(&self) -> bool;
    fn zero_elem(&self) -> Self::Elem;
    fn inf_elem(&self) -> Self::Elem;
    fn resolve_name(&self, name: &str) -> Option<Self::Elem>;
    fn combine_elems(
        &self,
        c1: &Scalar,
        x: &Self::Elem,
        c2: &Scalar,
        y: &Self::Elem,
    ) -> Result<Self::Elem, LogicError>;
    fn compare_elems(&self, x: &Self::Elem, y: &Self::Elem, order: usize)
        -> Result<Ordering, LogicError>;
    fn valuate_elem(&self, x: &Self::Elem) -> Result<Self::Elem, LogicError>;
    fn render_elem(&self, x: &Self::Elem) -> String;
}

impl Structure for Model {
    type Elem = Point;

    fn orders(&self) -> usize {
        Model::orders(self)
    }

    fn has_valuation(&self) -> bool {
        self.is_hamel()
    }

    fn zero_elem(&self) -> Point {
        Point::Finite(self.zero())
    }

    fn inf_elem(&self) -> Point {
        Point::Infinity
    }

    fn resolve_name(&self, name: &str) -> Option<Point> {
        self.gen_by_name(name).map(|gen| Point::Finite(self.unit(gen)))
    }

    fn combine_elems(
        &self,
        c1: &Scalar,
        x: &Point,
        c2: &Scalar,
        y: &Point,
    ) -> Result<Point, LogicError> {
        Ok(self.combine_points(c1, x, c2, y)?)
    }

    fn compare_elems(&self, x: &Point, y: &Point, order: usize) -> Result<Ordering, LogicError> {
        Ok(self.compare(x, y, order)?)
    }

    fn valuate_elem(&self, x: &Point) -> Result<Point, LogicError> {
        if !self.is_hamel() {
            return Err(LogicError::ValUnsupported);
        }
        Ok(self.valuate(x)?)
    }

    fn render_elem(&self, x: &Point) -> String {
        render_point(self, x)
    }
}

impl Structure for Oracle {
    type Elem = LeadPoint;

    fn orders(&self) -> usize {
        2
    }

    fn has_valuation(&self) -> bool {
        true
    }

    fn zero_elem(&self) -> LeadPoint {
        LeadPoint::Finite(LeadVector::zero())
    }

    fn inf_elem(&self) -> LeadPoint {
        LeadPoint::Infinity
    }

    fn resolve_name(&self, name: &str) -> Option<LeadPoint> {
        parse_index(name).map(|q| LeadPoint::Finite(LeadVector::unit(q)))
    }

    fn combine_elems(
        &self,
        c1: &Scalar,
        x: &LeadPoint,
        c2: &Scalar,
        y: &LeadPoint,
    ) -> Result<LeadPoint, LogicError> {
        Ok(match (x, y) {
            (LeadPoint::Infinity, _) | (_, LeadPoint::Infinity) => LeadPoint::Infinity,
            (LeadPoint::Finite(a), LeadPoint::Finite(b)) => {
                LeadPoint::Finite(LeadVector::combine(c1, a, c2, b))
            }
        })
    }

    fn compare_elems(
        &self,
        x: &LeadPoint,
        y: &LeadPoint,
        order: usize,
    ) -> Result<Ordering, LogicError> {
        match order {
            0 => Ok(lead_value_compare(x, y)?),
            1 => match (x, y) {
                (LeadPoint::Infinity, LeadPoint::Infinity) => Ok(Ordering::Equal),
                (LeadPoint::Infinity, LeadPoint::Finite(_)) => Ok(Ordering::Greater),
                (LeadPoint::Finite(_), LeadPoint::Infinity) => Ok(Ordering::Less),
                (LeadPoint::Finite(a), LeadPoint::Finite(b)) => {
                    let minus = Scalar::from_int(-1);
                    let diff = LeadVector::combine(&Scalar::one(), a, &minus, b);
                    Ok(diff.lead_sign1())
                }
            },
            _ => Err(LogicError::Oracle(OracleError::NoFirstOrder)),
        }
    }

    fn valuate_elem(&self, x: &LeadPoint) -> Result<LeadPoint, LogicError> {
        Ok(x.lead_valuate())
    }

    fn render_elem(&self, x: &LeadPoint) -> String {
        x.to_string()
    }
}

/// Evaluate a term; the assignment shadows generator names.
pub fn eval_term<S: Structure>(
    structure: &S,
    term: &Term,
    sigma: &Assignment<S::Elem>,
) -> Result<S::Elem, LogicError> {
    match term {
        Term::Zero => Ok(structure.zero_elem()),
        Term::Inf => Ok(structure.inf_elem()),
        Term::Var(name) => sigma
            .get(name)
            .cloned()
            .or_else(|| structure.resolve_name(name))
            .ok_or_else(|| LogicError::UnboundVariable(name.clone())),
        Term::Add(a, b) => {
            let ea = eval_term(structure, a, sigma)?;
            let eb = eval_term(structure, b, sigma)?;
            structure.combine_elems(&Scalar::one(), &ea, &Scalar::one(), &eb)
        }
        Term::Scale(c, inner) => {
            let e = eval_term(structure, inner, sigma)?;
            let zero = structure.zero_elem();
            structure.combine_elems(c, &e, &Scalar::zero(), &zero)
        }
        Term::Val(inner) => {
            let e = eval_term(structure, inner, sigma)?;
            structure.valuate_elem(&e)
        }
    }
}

/// Evaluate a quantifier-free formula under an assignment.
pub fn evaluate_qf<S: Structure>(
    structure: &S,
    formula: &Formula,
    sigma: &Assignment<S::Elem>,
) -> Result<bool, LogicError> {
    match formula {
        Formula::True => Ok(true),
        Formula::False => Ok(false),
        Formula::Eq(a, b) => {
            let ea = eval_term(structure, a, sigma)?;
            let eb = eval_term(structure, b, sigma)?;
            Ok(ea == eb)
        }
        Formula::Lt(order, a, b) => {
            if *order >= structure.orders() {
                return Err(LogicError::OrderOutOfRange {
                    order: *order,
                    orders: structure.orders(),
                });
            }
            let ea = eval_term(structure, a, sigma)?;
            let eb = eval_term(structure, b, sigma)?;
            Ok(structure.compare_elems(&ea, &eb, *order)? == Ordering::Less)
        }
        Formula::Not(f) => Ok(!evaluate_qf(structure, f, sigma)?),
        Formula::And(a, b) => {
            Ok(evaluate_qf(structure, a, sigma)? && evaluate_qf(structure, b, sigma)?)
        }
        Formula::Or(a, b) => {
            Ok(evaluate_qf(structure, a, sigma)? || evaluate_qf(structure, b, sigma)?)
        }
        Formula::Implies(a, b) => {
            Ok(!evaluate_qf(structure, a, sigma)? || evaluate_qf(structure, b, sigma)?)
        }
        Formula::Exists(..) | Formula::Forall(..) => Err(LogicError::NotQuantifierFree),
    }
}
