//! Sparse linear algebra over a generator tower.
//!
//! Elements of a finitely presented space are rational combinations of the
//! model's generators, stored sparsely as `generator index -> coefficient`.
//! A [`Point`] extends vectors with the absorbing element `inf`, which is
//! greater than every finite point in every order and swallows addition,
//! scaling and valuation.
//!
//! Vectors remember which model state they were built against: each tower
//! state carries a stamp, and operations reject vectors whose stamp does not
//! belong to the tower's history. Generator indices are only meaningful
//! relative to a tower, so mixing vectors across unrelated models is an
//! error, not a silent misread.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::scalar::Scalar;

/// Index of a generator within its tower, in adjunction order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub u32);

impl GenId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Identifies one state in one tower's adjunction history.
///
/// `nonce` is globally unique per state; `len` is the generator count at
/// that state. A vector stamped `(nonce, len)` is valid in any model whose
/// history contains that exact state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Stamp {
    pub(crate) nonce: u64,
    pub(crate) len: u32,
}

static NEXT_NONCE: AtomicU64 = AtomicU64::new(1);

impl Stamp {
    pub(crate) fn fresh(len: u32) -> Stamp {
        Stamp { nonce: NEXT_NONCE.fetch_add(1, AtomicOrdering::Relaxed), len }
    }

    pub fn generators(&self) -> usize {
        self.len as usize
    }
}

/// Error raised by the linear layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinearError {
    #[error("vectors belong to different models")]
    MixedModels,
    #[error("vector references generator {0} outside its model")]
    GeneratorOutOfRange(u32),
}

/// A finite element: a sparse rational combination of generators.
///
/// Invariant: no stored coefficient is zero, and every index is strictly
/// below the stamped generator count.
///
/// Equality, ordering and hashing look only at the coefficients: the stamp
/// is provenance metadata, and the same element may be written down at
/// different states of one tower.
#[derive(Debug, Clone)]
pub struct Vector {
    stamp: Stamp,
    coeffs: BTreeMap<GenId, Scalar>,
}

impl PartialEq for Vector {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for Vector {}

impl PartialOrd for Vector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Vector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl std::hash::Hash for Vector {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Vector {
    pub(crate) fn zero_at(stamp: Stamp) -> Vector {
        Vector { stamp, coeffs: BTreeMap::new() }
    }

    pub(crate) fn unit_at(stamp: Stamp, gen: GenId) -> Vector {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(gen, Scalar::one());
        Vector { stamp, coeffs }
    }

    pub(crate) fn from_coeffs(stamp: Stamp, coeffs: BTreeMap<GenId, Scalar>) -> Vector {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Vector { stamp, coeffs }
    }

    pub fn stamp(&self) -> Stamp {
        self.stamp
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of generators with nonzero coefficient.
    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    pub fn support(&self) -> impl Iterator<Item = GenId> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn coeff(&self, gen: GenId) -> Scalar {
        self.coeffs.get(&gen).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (GenId, &Scalar)> {
        self.coeffs.iter().map(|(g, c)| (*g, c))
    }

    /// Highest generator in the support, if any.
    pub fn top(&self) -> Option<GenId> {
        self.coeffs.keys().next_back().copied()
    }

    /// Splits off the highest generator: `self = rest + coeff * top`.
    pub(crate) fn split_top(&self) -> Option<(GenId, Scalar, Vector)> {
        let top = self.top()?;
        let mut rest = self.clone();
        let coeff = rest.coeffs.remove(&top).expect("top coefficient present");
        Some((top, coeff, rest))
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero_at(self.stamp);
        }
        let coeffs = self.coeffs.iter().map(|(g, x)| (*g, c * x)).collect();
        Vector { stamp: self.stamp, coeffs }
    }

    pub fn neg(&self) -> Vector {
        let coeffs = self.coeffs.iter().map(|(g, x)| (*g, -x)).collect();
        Vector { stamp: self.stamp, coeffs }
    }

    pub(crate) fn add_scaled(&self, c: &Scalar, other: &Vector) -> Vector {
        debug_assert_eq!(self.stamp, other.stamp);
        let mut coeffs = self.coeffs.clone();
        for (g, x) in &other.coeffs {
            let entry = coeffs.entry(*g).or_insert_with(Scalar::zero);
            *entry += &(c * x);
            if entry.is_zero() {
                coeffs.remove(g);
            }
        }
        Vector { stamp: self.stamp, coeffs }
    }

    /// Re-stamps a vector onto a compatible (same or later) model state.
    pub(crate) fn restamped(&self, stamp: Stamp) -> Vector {
        Vector { stamp, coeffs: self.coeffs.clone() }
    }
}

/// `c1*x + c2*y` for vectors of the same model state.
///
/// For vectors from different states of the same tower, go through
/// `Model::combine`, which can verify shared history.
pub fn vec_combine(c1: &Scalar, x: &Vector, c2: &Scalar, y: &Vector) -> Result<Vector, LinearError> {
    if x.stamp != y.stamp {
        return Err(LinearError::MixedModels);
    }
    Ok(x.scale(c1).add_scaled(c2, y))
}

/// A point of the extended space: a finite vector or `inf`.
///
/// Comparisons inherit the coefficient-only equality of [`Vector`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Finite(Vector),
    Infinity,
}

impl Point {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Point::Finite(v) if v.is_zero())
    }

    pub fn as_finite(&self) -> Option<&Vector> {
        match self {
            Point::Finite(v) => Some(v),
            Point::Infinity => None,
        }
    }
}

impl From<Vector> for Point {
    fn from(v: Vector) -> Point {
        Point::Finite(v)
    }
}

/// `c1*x + c2*y` on points; `inf` absorbs regardless of coefficients.
pub fn point_combine(c1: &Scalar, x: &Point, c2: &Scalar, y: &Point) -> Result<Point, LinearError> {
    match (x, y) {
        (Point::Infinity, _) | (_, Point::Infinity) => Ok(Point::Infinity),
        (Point::Finite(a), Point::Finite(b)) => Ok(Point::Finite(vec_combine(c1, a, c2, b)?)),
    }
}

/// Scaling a point: `inf` is a fixed point of every scalar map.
pub fn point_scale(c: &Scalar, x: &Point) -> Point {
    match x {
        Point::Infinity => Point::Infinity,
        Point::Finite(v) => Point::Finite(v.scale(c)),
    }
}

/// An interval endpoint for witness requests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInfinite,
    Finite(Vector),
    PosInfinite,
}

impl Bound {
    pub fn as_finite(&self) -> Option<&Vector> {
        match self {
            Bound::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    fn stamped(n: u32) -> Stamp {
        Stamp::fresh(n)
    }

    #[test]
    fn combine_is_sparse_and_cancels() {
        let st = stamped(3);
        let x = Vector::from_coeffs(
            st,
            [(GenId(0), s("2")), (GenId(2), s("1/2"))].into_iter().collect(),
        );
        let y = Vector::from_coeffs(
            st,
            [(GenId(0), s("2")), (GenId(1), s("5"))].into_iter().collect(),
        );
        let z = vec_combine(&s("1"), &x, &s("-1"), &y).unwrap();
        assert_eq!(z.coeff(GenId(0)), s("0"));
        assert_eq!(z.coeff(GenId(1)), s("-5"));
        assert_eq!(z.coeff(GenId(2)), s("1/2"));
        assert_eq!(z.support_size(), 2);
    }

    #[test]
    fn mixed_model_vectors_are_rejected() {
        let x = Vector::zero_at(stamped(1));
        let y = Vector::zero_at(stamped(1));
        assert_eq!(vec_combine(&s("1"), &x, &s("1"), &y), Err(LinearError::MixedModels));
    }

    #[test]
    fn infinity_absorbs_combination() {
        let st = stamped(1);
        let x = Point::Finite(Vector::unit_at(st, GenId(0)));
        let inf = Point::Infinity;
        assert_eq!(point_combine(&s("3"), &x, &s("0"), &inf).unwrap(), Point::Infinity);
        assert_eq!(point_combine(&s("0"), &inf, &s("1"), &x).unwrap(), Point::Infinity);
        assert_eq!(point_scale(&s("0"), &inf), Point::Infinity);
        let z = point_combine(&s("1"), &x, &s("-1"), &x).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn scaling_by_zero_gives_zero_on_finite_points() {
        let st = stamped(2);
        let x = Vector::unit_at(st, GenId(1));
        assert!(x.scale(&s("0")).is_zero());
    }
}
