//! The convex valuation of a hamel-mode tower.
//!
//! Generators carry their own values: a value generator is its value, a
//! ball generator's value is its alpha. The generators of a tower form a
//! separated family, so the value of any combination is the order-0 minimum
//! of the values across its support. [`Model::valuate`] computes exactly
//! that; [`Model::valuate_recursive`] instead peels the highest generator
//! and applies the extension rule of its adjunction. The two must agree
//! everywhere, which the test suites check against each other.

use std::cmp::Ordering;

use crate::linear::{GenId, Point, Vector};
use crate::tower::model::{GenRecord, Model, TowerError};

impl Model {
    /// The value a single generator was adjoined with.
    pub fn gen_value(&self, gen: GenId) -> Result<Vector, TowerError> {
        match self.gen_record(gen) {
            GenRecord::Free { .. } => Err(TowerError::HamelOnly),
            GenRecord::Value { .. } => Ok(self.unit(gen)),
            GenRecord::Ball { acut, .. } => Ok(acut.alpha.clone()),
        }
    }

    /// The valuation: order-0 minimum of generator values over the support,
    /// with `v(0) = v(inf) = inf`.
    pub fn valuate(&self, x: &Point) -> Result<Point, TowerError> {
        if !self.is_hamel() {
            return Err(TowerError::HamelOnly);
        }
        self.accepts_point(x)?;
        match x {
            Point::Infinity => Ok(Point::Infinity),
            Point::Finite(v) => Ok(self.valuate_raw(v)),
        }
    }

    /// Valuation of a finite element; hamel mode only, inputs pre-checked.
    pub(crate) fn valuate_raw(&self, v: &Vector) -> Point {
        let mut best: Option<Vector> = None;
        for gen in v.support() {
            let value = match self.gen_record(gen) {
                GenRecord::Value { .. } => self.unit_value(gen),
                GenRecord::Ball { acut, .. } => acut.alpha.clone(),
                GenRecord::Free { .. } => unreachable!("free generator in hamel tower"),
            };
            best = Some(match best {
                None => value,
                Some(prev) => {
                    if self.sign(&self.raw_diff(&value, &prev), 0) == Ordering::Less {
                        value
                    } else {
                        prev
                    }
                }
            });
        }
        match best {
            None => Point::Infinity,
            Some(v) => Point::Finite(v),
        }
    }

    fn unit_value(&self, gen: GenId) -> Vector {
        // Stamped at the state right after the generator appeared, so it is
        // usable in every later extension.
        self.unit(gen)
    }

    /// Valuation by structural recursion on the highest generator, applying
    /// each adjunction's extension rule directly.
    pub fn valuate_recursive(&self, x: &Point) -> Result<Point, TowerError> {
        if !self.is_hamel() {
            return Err(TowerError::HamelOnly);
        }
        self.accepts_point(x)?;
        match x {
            Point::Infinity => Ok(Point::Infinity),
            Point::Finite(v) => Ok(self.valuate_rec_raw(v)),
        }
    }

    fn valuate_rec_raw(&self, v: &Vector) -> Point {
        let Some((top, _coeff, rest)) = v.split_top() else {
            return Point::Infinity;
        };
        match self.gen_record(top) {
            GenRecord::Value { cut0 } => {
                // v(y + c*h) is v(y) when v(y) falls below h, else h.
                match self.valuate_rec_raw(&rest) {
                    Point::Finite(vy) if self.cut_contains(cut0, &vy) => Point::Finite(vy),
                    _ => Point::Finite(self.unit(top)),
                }
            }
            GenRecord::Ball { acut, .. } => {
                // v(y + c*t) = min0(v(y), alpha).
                match self.valuate_rec_raw(&rest) {
                    Point::Infinity => Point::Finite(acut.alpha.clone()),
                    Point::Finite(vy) => {
                        if self.sign(&self.raw_diff(&vy, &acut.alpha), 0) == Ordering::Less {
                            Point::Finite(vy)
                        } else {
                            Point::Finite(acut.alpha.clone())
                        }
                    }
                }
            }
            GenRecord::Free { .. } => unreachable!("free generator in hamel tower"),
        }
    }

    /// Compares two elements of the closed ball at `alpha` in the residue
    /// space: `Equal` when they share a coset of the open ball, otherwise
    /// their second-order comparison.
    pub fn residue_compare(
        &self,
        x: &Vector,
        y: &Vector,
        alpha: &Vector,
    ) -> Result<Ordering, TowerError> {
        if !self.is_hamel() {
            return Err(TowerError::HamelOnly);
        }
        self.accepts(x)?;
        self.accepts(y)?;
        self.accepts(alpha)?;
        if !self.is_value(alpha)? {
            return Err(TowerError::NotAValue);
        }
        for arg in [x, y] {
            if !arg.is_zero() {
                let va = self.valuate_raw(arg);
                let inside = match &va {
                    Point::Infinity => true,
                    Point::Finite(v) => self.sign(&self.raw_diff(v, alpha), 0) != Ordering::Less,
                };
                if !inside {
                    return Err(TowerError::OutsideBall);
                }
            }
        }
        let d = self.raw_diff(x, y);
        let same_coset = match self.valuate_raw(&d) {
            Point::Infinity => true,
            Point::Finite(vd) => self.sign(&self.raw_diff(&vd, alpha), 0) == Ordering::Greater,
        };
        if same_coset {
            Ok(Ordering::Equal)
        } else {
            Ok(self.sign(&d, 1))
        }
    }
}
