//! Separated bases of finitely generated subspaces.
//!
//! A basis is separated when the value of every combination is the minimum
//! value across the basis vectors it actually uses. Generators of a tower
//! are separated by construction, so a list of vectors is reduced to a
//! separated basis by Gaussian elimination restricted to same-value
//! classes: within one class, elimination happens on the minimal-value
//! coordinate blocks, and a vector whose block cancels completely jumps to
//! a strictly larger value and is reclassified.

use std::collections::BTreeSet;

use crate::linear::{GenId, Point, Vector};
use crate::scalar::Scalar;
use crate::tower::model::{Model, TowerError};

impl Model {
    /// Reduces `vs` to a separated basis of its span, in insertion order.
    pub fn separated_basis(&self, vs: &[Vector]) -> Result<Vec<Vector>, TowerError> {
        if !self.is_hamel() {
            return Err(TowerError::HamelOnly);
        }
        for v in vs {
            self.accepts(v)?;
        }
        let mut basis: Vec<Member> = Vec::new();
        for v in vs {
            let mut x = v.clone();
            'reduce: loop {
                if x.is_zero() {
                    break;
                }
                let value = match self.valuate_raw(&x) {
                    Point::Finite(v) => v,
                    Point::Infinity => unreachable!("nonzero element has finite value"),
                };
                for member in basis.iter().filter(|m| m.value == value) {
                    let c = x.coeff(member.pivot);
                    if c.is_zero() {
                        continue;
                    }
                    let ratio = c
                        .checked_div(&member.vector.coeff(member.pivot))
                        .expect("pivot coefficient is nonzero");
                    x = self.raw_combine(&Scalar::one(), &x, &-ratio, &member.vector);
                    if x.is_zero() {
                        break 'reduce;
                    }
                    // Full cancellation of the block raises the value.
                    if self.valuate_raw(&x) != Point::Finite(value.clone()) {
                        continue 'reduce;
                    }
                }
                let pivot = self
                    .block_coords(&x, &value)
                    .next()
                    .expect("an element carries its own value on some coordinate");
                basis.push(Member { vector: x, value, pivot });
                break;
            }
        }
        Ok(basis.into_iter().map(|m| m.vector).collect())
    }

    /// The exact value set of the span of `vs`, excluding infinity.
    pub fn subspace_values(&self, vs: &[Vector]) -> Result<BTreeSet<Vector>, TowerError> {
        let basis = self.separated_basis(vs)?;
        let mut values = BTreeSet::new();
        for b in &basis {
            match self.valuate_raw(b) {
                Point::Finite(v) => values.insert(v),
                Point::Infinity => unreachable!("basis vectors are nonzero"),
            };
        }
        Ok(values)
    }

    /// Coordinates of `x` whose generator carries exactly the value of `x`.
    fn block_coords<'a>(
        &'a self,
        x: &'a Vector,
        value: &'a Vector,
    ) -> impl Iterator<Item = GenId> + 'a {
        x.support().filter(move |g| {
            self.gen_value(*g).expect("hamel towers value every generator") == *value
        })
    }
}

struct Member {
    vector: Vector,
    value: Vector,
    pivot: GenId,
}
