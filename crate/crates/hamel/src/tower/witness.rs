//! Constructive witnesses for density and independence.
//!
//! Each operation extends the model by the generators its construction
//! needs and returns the extension together with the witnessing element.
//! Extensions are conservative: they never change a comparison or value
//! among pre-existing elements, so callers may keep using their vectors.

use std::cmp::Ordering;

use crate::linear::{Bound, GenId, Point, Vector};
use crate::scalar::Scalar;
use crate::tower::cut::{AlphaCut, Cut};
use crate::tower::model::{Model, TowerError};

impl Model {
    /// A fresh valuation value strictly inside `(a, b)` in the first order.
    pub fn density_witness(&self, a: &Vector, b: &Vector) -> Result<(Model, GenId), TowerError> {
        if !self.is_hamel() {
            return Err(TowerError::HamelOnly);
        }
        if self.compare_vec(a, b, 0)? != Ordering::Less {
            return Err(TowerError::EmptyInterval { order: 0 });
        }
        let id = GenId(self.len() as u32);
        let (next, _) = self.adjoin_value(None, Cut::below_weak(0, a.clone()))?;
        Ok((next, id))
    }

    /// An element of positive value strictly inside `(a, b)` in the first
    /// order: a point of the dense set `{ g : v(g) >_0 0 }`.
    pub fn dense_pair_witness(&self, a: &Vector, b: &Vector) -> Result<(Model, Vector), TowerError> {
        if !self.is_hamel() {
            return Err(TowerError::HamelOnly);
        }
        if self.compare_vec(a, b, 0)? != Ordering::Less {
            return Err(TowerError::EmptyInterval { order: 0 });
        }
        let (m1, alpha) = self.adjoin_value(None, Cut::below_weak(0, self.zero()))?;
        let acut = AlphaCut { alpha, pivot: m1.zero(), weak: true };
        m1.adjoin_ball(None, acut, Cut::below_weak(0, a.clone()))
    }

    /// An element lying in `iv0` under the first order and in `iv1` under
    /// the second, simultaneously.
    ///
    /// In plain mode one free generator realizes the cuts directly. In
    /// hamel mode the element is `m + t`: `m` the second-order midpoint of
    /// `iv1` and `t` a ball element whose value exceeds the value of the
    /// interval width, so that `t` cannot move `m` out of `iv1`, positioned
    /// in the first order by the translated cut of `iv0`.
    pub fn independence_witness(
        &self,
        iv0: (Bound, Bound),
        iv1: (Bound, Bound),
    ) -> Result<(Model, Vector), TowerError> {
        self.check_interval(&iv0, 0)?;
        self.check_interval(&iv1, 1)?;
        if !self.is_hamel() {
            let cuts = vec![self.interval_cut(&iv0, 0), self.interval_cut(&iv1, 1)];
            return self.adjoin_free(None, cuts);
        }

        // Replace infinite second-order bounds by finite surrogates.
        let (base, a1, b1) = self.finite_second_interval(iv1)?;
        let half = Scalar::new(1, 2).expect("nonzero denominator");
        let mid = base.raw_combine(&half, &a1, &half, &b1);
        let width = base.raw_diff(&b1, &a1);
        let vw = match base.valuate(&Point::Finite(width))? {
            Point::Finite(v) => v,
            Point::Infinity => unreachable!("nonempty interval has nonzero width"),
        };

        let (m1, alpha) = base.adjoin_value(None, Cut::below_weak(0, vw))?;
        let cut0 = match &iv0.0 {
            Bound::Finite(a0) => Cut::below_weak(0, m1.raw_diff(a0, &mid)),
            Bound::NegInfinite => Cut::nothing(0),
            Bound::PosInfinite => unreachable!("rejected by the interval check"),
        };
        let acut = AlphaCut { alpha, pivot: m1.zero(), weak: true };
        let (m2, t) = m1.adjoin_ball(None, acut, cut0)?;
        let z = m2.raw_combine(&Scalar::one(), &t, &Scalar::one(), &mid);
        Ok((m2, z))
    }

    /// An element of both intervals that is not a valuation value.
    ///
    /// Takes an independence witness `z'`; if `v(z') = z'` it takes a
    /// second one inside `(z', y0)` and `(z', min_1(2z', y1))`, which by
    /// convexity keeps the value `v(z')` without being it.
    pub fn nonvalue_witness(
        &self,
        iv0: (Bound, Bound),
        iv1: (Bound, Bound),
    ) -> Result<(Model, Vector), TowerError> {
        if !self.is_hamel() {
            return Err(TowerError::HamelOnly);
        }
        let hi0 = iv0.1.clone();
        let hi1 = iv1.1.clone();
        let (m1, z) = self.independence_witness(iv0, iv1)?;
        if m1.valuate(&Point::Finite(z.clone()))? != Point::Finite(z.clone()) {
            return Ok((m1, z));
        }
        let twice = z.scale(&Scalar::from_int(2));
        let cap = match &hi1 {
            Bound::Finite(y1) if m1.compare_vec(y1, &twice, 1)? == Ordering::Less => y1.clone(),
            _ => twice,
        };
        m1.independence_witness(
            (Bound::Finite(z.clone()), hi0),
            (Bound::Finite(z), Bound::Finite(cap)),
        )
    }

    /// Rejects empty or ill-formed intervals; finite bounds must belong to
    /// the model.
    fn check_interval(&self, iv: &(Bound, Bound), order: usize) -> Result<(), TowerError> {
        self.check_order(order)?;
        for bound in [&iv.0, &iv.1] {
            if let Bound::Finite(v) = bound {
                self.accepts(v)?;
            }
        }
        let nonempty = match iv {
            (Bound::PosInfinite, _) | (_, Bound::NegInfinite) => false,
            (Bound::NegInfinite, _) | (_, Bound::PosInfinite) => true,
            (Bound::Finite(a), Bound::Finite(b)) => self.compare_vec(a, b, order)? == Ordering::Less,
        };
        if !nonempty {
            return Err(TowerError::EmptyInterval { order });
        }
        Ok(())
    }

    /// The principal cut a free generator must realize to land in `iv`.
    fn interval_cut(&self, iv: &(Bound, Bound), order: usize) -> Cut {
        match iv {
            (Bound::Finite(a), _) => Cut::below_weak(order, a.clone()),
            (Bound::NegInfinite, Bound::Finite(b)) => Cut::below_strict(order, b.clone()),
            (Bound::NegInfinite, Bound::PosInfinite) => Cut::nothing(order),
            _ => unreachable!("rejected by the interval check"),
        }
    }

    /// Finite second-order bounds for `iv1`, extending the model by one
    /// value generator when it has no nonzero element to offset with.
    fn finite_second_interval(
        &self,
        iv1: (Bound, Bound),
    ) -> Result<(Model, Vector, Vector), TowerError> {
        if let (Bound::Finite(a1), Bound::Finite(b1)) = &iv1 {
            return Ok((self.clone(), a1.clone(), b1.clone()));
        }
        let base = if self.is_empty() {
            self.adjoin_value(None, Cut::below_weak(0, self.zero()))?.0
        } else {
            self.clone()
        };
        let unit = base.unit(GenId(0));
        let p = if base.sign_vs_zero(&unit, 1)? == Ordering::Less { unit.neg() } else { unit };
        Ok(match iv1 {
            (Bound::Finite(a1), _) => {
                let b1 = base.raw_combine(&Scalar::one(), &a1, &Scalar::one(), &p);
                (base, a1, b1)
            }
            (_, Bound::Finite(b1)) => {
                let a1 = base.raw_combine(&Scalar::one(), &b1, &-Scalar::one(), &p);
                (base, a1, b1)
            }
            _ => {
                let a1 = p.neg();
                (base, a1, p)
            }
        })
    }
}
