//! Cut data attached to adjoined generators.
//!
//! A generator's position in an order is pinned down by a downward-closed
//! set of pre-existing elements, realized principally: `BelowWeak(a)` places
//! the new element in the gap immediately above `a`, `BelowStrict(a)`
//! immediately below `a`, and `Everything`/`Nothing` above or below the
//! whole existing space.

use crate::linear::Vector;

/// The downward-closed set of a principal cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutShape {
    /// The whole space: the new element lies above everything.
    Everything,
    /// The empty set: the new element lies below everything.
    Nothing,
    /// `{ g : g < a }`: the new element lands immediately below `a`.
    BelowStrict(Vector),
    /// `{ g : g <= a }`: the new element lands immediately above `a`.
    BelowWeak(Vector),
}

/// A principal cut in one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub order: usize,
    pub shape: CutShape,
}

impl Cut {
    pub fn everything(order: usize) -> Cut {
        Cut { order, shape: CutShape::Everything }
    }

    pub fn nothing(order: usize) -> Cut {
        Cut { order, shape: CutShape::Nothing }
    }

    pub fn below_strict(order: usize, at: Vector) -> Cut {
        Cut { order, shape: CutShape::BelowStrict(at) }
    }

    pub fn below_weak(order: usize, at: Vector) -> Cut {
        Cut { order, shape: CutShape::BelowWeak(at) }
    }

    /// The vector the cut is anchored at, if principal.
    pub fn anchor(&self) -> Option<&Vector> {
        match &self.shape {
            CutShape::BelowStrict(a) | CutShape::BelowWeak(a) => Some(a),
            _ => None,
        }
    }
}

/// A cut in the residue space of a closed ball.
///
/// `alpha` names the ball; `pivot` is an element of the closed ball whose
/// coset anchors the cut. With `weak` the new element lies immediately above
/// the pivot's coset, otherwise immediately below it, in the second order of
/// the quotient of the closed ball by the open ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaCut {
    pub alpha: Vector,
    pub pivot: Vector,
    pub weak: bool,
}
