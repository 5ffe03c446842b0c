//! The order decision procedure.
//!
//! The sign of a nonzero element `z = y + c*g` (with `g` the highest
//! generator in the support) reduces to a cut query: `z` is positive in
//! order `i` exactly when `(-1/c)*y` lies below `g`'s order-`i` cut, flipped
//! if `c` is negative. Cut queries mention only earlier generators, so the
//! recursion terminates. Free and value generators answer order 0 straight
//! from their stored cut; the second-order cuts of value and ball
//! generators are derived from the valuation, which is what makes the two
//! orders interact.

use std::cmp::Ordering;

use crate::linear::{GenId, Point, Vector};
use crate::tower::cut::{AlphaCut, Cut, CutShape};
use crate::tower::model::{GenRecord, Model, TowerError};

impl Model {
    /// Compares two points in the given order. `inf` is strictly greater
    /// than every finite point in every order.
    pub fn compare(&self, x: &Point, y: &Point, order: usize) -> Result<Ordering, TowerError> {
        self.check_order(order)?;
        self.accepts_point(x)?;
        self.accepts_point(y)?;
        Ok(match (x, y) {
            (Point::Infinity, Point::Infinity) => Ordering::Equal,
            (Point::Infinity, Point::Finite(_)) => Ordering::Greater,
            (Point::Finite(_), Point::Infinity) => Ordering::Less,
            (Point::Finite(a), Point::Finite(b)) => self.sign(&self.raw_diff(a, b), order),
        })
    }

    /// Compares two finite elements in the given order.
    pub fn compare_vec(&self, x: &Vector, y: &Vector, order: usize) -> Result<Ordering, TowerError> {
        self.check_order(order)?;
        self.accepts(x)?;
        self.accepts(y)?;
        Ok(self.sign(&self.raw_diff(x, y), order))
    }

    /// Sign of a finite element against zero in the given order.
    pub(crate) fn sign(&self, z: &Vector, order: usize) -> Ordering {
        let Some((top, coeff, rest)) = z.split_top() else {
            return Ordering::Equal;
        };
        // z = coeff * (g_top - w) with w in the span of earlier generators.
        let w = rest.scale(&-coeff.recip().expect("nonzero support coefficient"));
        let below = self.lower_cut_contains(top, order, &w);
        if below != coeff.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    pub(crate) fn sign_vs_zero(&self, z: &Vector, order: usize) -> Result<Ordering, TowerError> {
        self.check_order(order)?;
        self.accepts(z)?;
        Ok(self.sign(z, order))
    }

    /// Whether `w` (over generators before `gen`) lies strictly below `gen`
    /// in the given order.
    fn lower_cut_contains(&self, gen: GenId, order: usize, w: &Vector) -> bool {
        match self.gen_record(gen) {
            GenRecord::Free { cuts } => self.cut_contains(&cuts[order], w),
            GenRecord::Value { cut0 } => {
                if order == 0 {
                    return self.cut_contains(cut0, w);
                }
                // Below in the second order: non-positive elements, and
                // positive elements whose value lies above the new one.
                if self.sign(w, 1) != Ordering::Greater {
                    return true;
                }
                match self.valuate_raw(w) {
                    Point::Infinity => unreachable!("positive element has finite value"),
                    Point::Finite(vw) => !self.cut_contains(cut0, &vw),
                }
            }
            GenRecord::Ball { acut, cut0 } => {
                if order == 0 {
                    return self.cut_contains(cut0, w);
                }
                // Elements outside the closed ball sit entirely below or
                // entirely above it, decided by their own sign; elements of
                // the ball are decided by the residue cut.
                let outside = match self.valuate_raw(w) {
                    Point::Infinity => false,
                    Point::Finite(vw) => self.sign(&self.raw_diff(&vw, &acut.alpha), 0) == Ordering::Less,
                };
                if outside {
                    self.sign(w, 1) == Ordering::Less
                } else {
                    self.alpha_cut_contains(acut, w)
                }
            }
        }
    }

    /// Membership of a closed-ball element in a residue-space cut.
    fn alpha_cut_contains(&self, acut: &AlphaCut, w: &Vector) -> bool {
        let d = self.raw_diff(w, &acut.pivot);
        let same_coset = match self.valuate_raw(&d) {
            Point::Infinity => true,
            Point::Finite(vd) => self.sign(&self.raw_diff(&vd, &acut.alpha), 0) == Ordering::Greater,
        };
        if same_coset {
            acut.weak
        } else {
            self.sign(&d, 1) == Ordering::Less
        }
    }

    /// Membership of `w` in a principal cut.
    pub(crate) fn cut_contains(&self, cut: &Cut, w: &Vector) -> bool {
        match &cut.shape {
            CutShape::Everything => true,
            CutShape::Nothing => false,
            CutShape::BelowStrict(a) => self.sign(&self.raw_diff(w, a), cut.order) == Ordering::Less,
            CutShape::BelowWeak(a) => self.sign(&self.raw_diff(w, a), cut.order) != Ordering::Greater,
        }
    }

    /// Minimum of two points in order 0, with `inf` as the top element.
    pub fn min0(&self, a: &Point, b: &Point) -> Result<Point, TowerError> {
        Ok(if self.compare(a, b, 0)? == Ordering::Greater { b.clone() } else { a.clone() })
    }
}
