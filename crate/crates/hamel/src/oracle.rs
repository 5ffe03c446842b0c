//! An independent leading-term structure used to cross-check the engine.
//!
//! Elements are finite combinations of abstract basis elements `e_q`
//! indexed by rationals, ordered by index. The valuation of a combination
//! is the basis element at its minimal index, and the second-order sign is
//! the sign of the coefficient there. This determines the valuation, the
//! second order, and the first order on values, but deliberately not a
//! first order on arbitrary elements, so comparison at order 0 is partial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Errors from oracle operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("expected a basis element or `inf`")]
    NotABasisElement,
    #[error("the leading-term structure orders only values in the first order")]
    NoFirstOrder,
}

/// The leading-term structure itself, as a formula interpretation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Oracle;

/// A finite combination of basis elements with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct LeadVector {
    coeffs: BTreeMap<Scalar, Scalar>,
}

/// A leading-term element or the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeadPoint {
    Finite(LeadVector),
    Infinity,
}

impl LeadVector {
    pub fn zero() -> LeadVector {
        LeadVector::default()
    }

    /// The basis element `e_q`.
    pub fn unit(q: Scalar) -> LeadVector {
        LeadVector { coeffs: BTreeMap::from([(q, Scalar::one())]) }
    }

    pub fn from_coeffs<I>(coords: I) -> LeadVector
    where
        I: IntoIterator<Item = (Scalar, Scalar)>,
    {
        let mut coeffs: BTreeMap<Scalar, Scalar> = BTreeMap::new();
        for (q, c) in coords {
            let entry = coeffs.entry(q).or_insert_with(Scalar::zero);
            *entry += &c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        LeadVector { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Scalar, &Scalar)> {
        self.coeffs.iter()
    }

    /// The index `q` when the element is exactly a basis element `e_q`.
    pub fn basis_index(&self) -> Option<&Scalar> {
        match self.coeffs.iter().next() {
            Some((q, c)) if self.coeffs.len() == 1 && c == &Scalar::one() => Some(q),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> LeadVector {
        if c.is_zero() {
            return LeadVector::zero();
        }
        LeadVector { coeffs: self.coeffs.iter().map(|(q, x)| (q.clone(), c * x)).collect() }
    }

    pub fn combine(c1: &Scalar, x: &LeadVector, c2: &Scalar, y: &LeadVector) -> LeadVector {
        let mut coeffs = x.scale(c1).coeffs;
        for (q, c) in &y.coeffs {
            let entry = coeffs.entry(q.clone()).or_insert_with(Scalar::zero);
            *entry += &(c2 * c);
        }
        coeffs.retain(|_, c| !c.is_zero());
        LeadVector { coeffs }
    }

    /// The valuation: the basis element at the minimal index, `inf` at zero.
    pub fn lead_valuate(&self) -> LeadPoint {
        match self.coeffs.keys().next() {
            None => LeadPoint::Infinity,
            Some(q) => LeadPoint::Finite(LeadVector::unit(q.clone())),
        }
    }

    /// The second-order sign: the sign of the minimal-index coefficient.
    pub fn lead_sign1(&self) -> Ordering {
        match self.coeffs.values().next() {
            None => Ordering::Equal,
            Some(c) => c.sign(),
        }
    }
}

impl LeadPoint {
    pub fn lead_valuate(&self) -> LeadPoint {
        match self {
            LeadPoint::Infinity => LeadPoint::Infinity,
            LeadPoint::Finite(v) => v.lead_valuate(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, LeadPoint::Finite(v) if v.is_zero())
    }
}

/// Compares two values (basis elements or `inf`) in the first order:
/// index order with `inf` on top. Rejects non-values.
pub fn lead_value_compare(a: &LeadPoint, b: &LeadPoint) -> Result<Ordering, OracleError> {
    let index = |p: &LeadPoint| match p {
        LeadPoint::Infinity => Ok(None),
        LeadPoint::Finite(v) => v.basis_index().cloned().map(Some).ok_or(OracleError::NotABasisElement),
    };
    Ok(match (index(a)?, index(b)?) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Greater,
        (Some(_), None) => Ordering::Less,
        (Some(qa), Some(qb)) => qa.cmp(&qb),
    })
}

/// The name of the basis element `e_q`: `e3` for integers, `e(1/2)` else.
pub fn index_name(q: &Scalar) -> String {
    let text = q.to_string();
    if text.contains('/') {
        format!("e({text})")
    } else {
        format!("e{text}")
    }
}

/// Recovers the index from a basis-element name accepted by `index_name`.
pub fn parse_index(name: &str) -> Option<Scalar> {
    let body = name.strip_prefix('e')?;
    let raw = match body.strip_prefix('(') {
        Some(inner) => inner.strip_suffix(')')?,
        None => body,
    };
    raw.parse().ok()
}

impl fmt::Display for LeadVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (q, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c == &Scalar::one() {
                write!(f, "{}", index_name(q))?;
            } else {
                write!(f, "{c}*{}", index_name(q))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LeadPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeadPoint::Infinity => write!(f, "inf"),
            LeadPoint::Finite(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use std::cmp::Ordering::{Equal, Greater, Less};

    use super::*;

    fn e(n: i64) -> LeadVector {
        LeadVector::unit(Scalar::from_int(n))
    }

    fn combo(parts: &[(i64, (i64, i64))]) -> LeadVector {
        LeadVector::from_coeffs(
            parts.iter().map(|(q, (n, d))| (Scalar::from_int(*q), Scalar::new(*n, *d).unwrap())),
        )
    }

    #[test]
    fn valuation_takes_the_minimal_index() {
        let x = combo(&[(1, (2, 1)), (2, (-3, 1))]);
        assert_eq!(x.lead_valuate(), LeadPoint::Finite(e(1)));
        assert_eq!(LeadVector::zero().lead_valuate(), LeadPoint::Infinity);
        assert_eq!(e(5).lead_valuate(), LeadPoint::Finite(e(5)));
        assert_eq!(LeadPoint::Infinity.lead_valuate(), LeadPoint::Infinity);
    }

    #[test]
    fn second_order_sign_reads_the_leading_coefficient() {
        assert_eq!(combo(&[(1, (2, 1)), (2, (-3, 1))]).lead_sign1(), Greater);
        assert_eq!(combo(&[(0, (-1, 2)), (1, (100, 1))]).lead_sign1(), Less);
        assert_eq!(LeadVector::zero().lead_sign1(), Equal);
    }

    #[test]
    fn value_order_is_index_order_with_infinity_on_top() {
        let fin = |v: LeadVector| LeadPoint::Finite(v);
        assert_eq!(lead_value_compare(&fin(e(1)), &fin(e(2))).unwrap(), Less);
        assert_eq!(lead_value_compare(&fin(e(3)), &LeadPoint::Infinity).unwrap(), Less);
        assert_eq!(lead_value_compare(&fin(e(2)), &fin(e(2))).unwrap(), Equal);
        assert_eq!(lead_value_compare(&LeadPoint::Infinity, &LeadPoint::Infinity).unwrap(), Equal);
        let double = e(1).scale(&Scalar::from_int(2));
        assert_eq!(lead_value_compare(&fin(double), &fin(e(1))), Err(OracleError::NotABasisElement));
        let sum = LeadVector::combine(&Scalar::one(), &e(1), &Scalar::one(), &e(2));
        assert_eq!(lead_value_compare(&fin(sum), &fin(e(1))), Err(OracleError::NotABasisElement));
    }

    #[test]
    fn valuation_axioms_hold_exactly() {
        let x = combo(&[(1, (2, 1)), (3, (5, 2))]);
        let y = combo(&[(2, (-7, 1)), (3, (1, 1))]);
        // Ultrametric with equality under distinct values.
        let sum = LeadVector::combine(&Scalar::one(), &x, &Scalar::one(), &y);
        assert_eq!(sum.lead_valuate(), x.lead_valuate());
        // Scaling invariance and idempotence.
        let scaled = x.scale(&Scalar::new(-3, 4).unwrap());
        assert_eq!(scaled.lead_valuate(), x.lead_valuate());
        let LeadPoint::Finite(vx) = x.lead_valuate() else { panic!("nonzero") };
        assert_eq!(vx.lead_valuate(), LeadPoint::Finite(vx.clone()));
        // Positivity of values in the second order.
        assert_eq!(vx.lead_sign1(), Greater);
        // Convexity instance: 0 <_1 a <_1 b forces v(a) >=_0 v(b).
        let a = combo(&[(2, (1, 1))]);
        let b = combo(&[(1, (1, 1)), (2, (-5, 1))]);
        assert_eq!(a.lead_sign1(), Greater);
        assert_eq!(LeadVector::combine(&Scalar::one(), &a, &-Scalar::one(), &b).lead_sign1(), Less);
        let cmp = lead_value_compare(&a.lead_valuate(), &b.lead_valuate()).unwrap();
        assert_ne!(cmp, Less);
        // Independence shadow: combinations of distinct units stay nonzero.
        let mix = combo(&[(1, (3, 1)), (2, (-2, 1)), (3, (1, 5))]);
        assert_ne!(mix.lead_valuate(), LeadPoint::Infinity);
    }

    #[test]
    fn names_round_trip() {
        assert_eq!(index_name(&Scalar::from_int(3)), "e3");
        assert_eq!(index_name(&Scalar::from_int(-2)), "e-2");
        assert_eq!(index_name(&Scalar::new(1, 2).unwrap()), "e(1/2)");
        for q in [Scalar::from_int(3), Scalar::from_int(-2), Scalar::new(1, 2).unwrap()] {
            assert_eq!(parse_index(&index_name(&q)), Some(q));
        }
        assert_eq!(parse_index("f3"), None);
        assert_eq!(parse_index("e(1/2"), None);
        assert_eq!(parse_index("e"), None);
    }

    #[test]
    fn rendering_matches_the_expression_syntax() {
        let x = combo(&[(1, (2, 1)), (2, (-3, 1))]);
        assert_eq!(x.to_string(), "2*e1 + -3*e2");
        assert_eq!(LeadVector::zero().to_string(), "0");
        assert_eq!(e(7).to_string(), "e7");
        assert_eq!(LeadPoint::Infinity.to_string(), "inf");
    }
}
