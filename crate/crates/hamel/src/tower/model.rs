//! Generator towers.
//!
//! A model is a finite sequence of generator adjunctions over the zero
//! space. Plain mode adjoins free generators with one cut per order; hamel
//! mode adjoins valuation data: a `value` generator becomes its own
//! valuation value, a `ball` generator takes a prescribed value `alpha`
//! together with a cut in the residue space of the closed ball at `alpha`.
//!
//! Models are immutable: every adjunction returns a new model sharing the
//! existing records, so extending a model for a witness never disturbs
//! comparisons or valuations among pre-existing elements.

use std::collections::BTreeMap;

use crate::linear::{GenId, LinearError, Point, Stamp, Vector};
use crate::scalar::{Scalar, ScalarError};
use crate::tower::cut::{AlphaCut, Cut};

/// How a tower interprets its generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// `orders` independent linear orders, no valuation.
    Plain { orders: usize },
    /// Two orders plus a convex valuation.
    Hamel,
}

impl Mode {
    pub fn orders(self) -> usize {
        match self {
            Mode::Plain { orders } => orders,
            Mode::Hamel => 2,
        }
    }
}

/// The adjunction data of one generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenRecord {
    /// Plain mode: one principal cut per order.
    Free { cuts: Vec<Cut> },
    /// Hamel mode: a fresh valuation value, positioned by `cut0` in the
    /// first order. Its second-order cut is derived: the new element lies
    /// above exactly the elements that are non-positive in the second order
    /// or whose value falls strictly above the new element.
    Value { cut0: Cut },
    /// Hamel mode: an element of prescribed value `alpha`, positioned by
    /// `acut` within the closed ball at `alpha` and by `cut0` in the first
    /// order.
    Ball { acut: AlphaCut, cut0: Cut },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Gen {
    pub name: String,
    pub record: GenRecord,
}

/// Errors raised by tower operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TowerError {
    #[error(transparent)]
    Linear(#[from] LinearError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("order {order} out of range: model has {orders} orders")]
    OrderOutOfRange { order: usize, orders: usize },
    #[error("operation requires a hamel-mode model")]
    HamelOnly,
    #[error("operation requires a plain-mode model")]
    PlainOnly,
    #[error("a plain model needs at least one order")]
    NoOrders,
    #[error("free adjunction needs {expected} cuts, got {got}")]
    WrongCutArity { expected: usize, got: usize },
    #[error("cut at position {position} is labeled for order {order}")]
    CutOrderMismatch { position: usize, order: usize },
    #[error("alpha is not a valuation value")]
    NotAValue,
    #[error("pivot lies outside the closed ball at alpha")]
    PivotOutsideBall,
    #[error("argument lies outside the closed ball at alpha")]
    OutsideBall,
    #[error("empty interval in order {order}")]
    EmptyInterval { order: usize },
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("invalid generator name `{0}`")]
    BadName(String),
}

/// Names the text syntax cannot treat as generators.
const RESERVED_NAMES: [&str; 6] = ["inf", "v", "E", "A", "true", "false"];

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    head_ok
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED_NAMES.contains(&name)
}

/// A finitely presented model: a tower of generator adjunctions.
#[derive(Debug, Clone)]
pub struct Model {
    mode: Mode,
    pub(crate) gens: Vec<Gen>,
    /// `stamps[i]` identifies the state with `i` generators.
    stamps: Vec<Stamp>,
}

impl Model {
    pub fn new_hamel() -> Model {
        Model { mode: Mode::Hamel, gens: Vec::new(), stamps: vec![Stamp::fresh(0)] }
    }

    pub fn new_plain(orders: usize) -> Result<Model, TowerError> {
        if orders == 0 {
            return Err(TowerError::NoOrders);
        }
        Ok(Model { mode: Mode::Plain { orders }, gens: Vec::new(), stamps: vec![Stamp::fresh(0)] })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn orders(&self) -> usize {
        self.mode.orders()
    }

    pub fn is_hamel(&self) -> bool {
        self.mode == Mode::Hamel
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// The stamp of the current state; vectors built here carry it.
    pub fn stamp(&self) -> Stamp {
        *self.stamps.last().expect("at least the empty state")
    }

    pub fn gen_name(&self, gen: GenId) -> &str {
        &self.gens[gen.index()].name
    }

    pub fn gen_record(&self, gen: GenId) -> &GenRecord {
        &self.gens[gen.index()].record
    }

    pub fn gen_ids(&self) -> impl Iterator<Item = GenId> {
        (0..self.gens.len() as u32).map(GenId)
    }

    pub fn gen_by_name(&self, name: &str) -> Option<GenId> {
        self.gens.iter().position(|g| g.name == name).map(|i| GenId(i as u32))
    }

    /// Checks that a vector was built against this tower's history.
    pub fn accepts(&self, v: &Vector) -> Result<(), TowerError> {
        let st = v.stamp();
        let known = self.stamps.get(st.generators()).copied();
        if known != Some(st) {
            return Err(LinearError::MixedModels.into());
        }
        Ok(())
    }

    pub fn accepts_point(&self, p: &Point) -> Result<(), TowerError> {
        match p {
            Point::Infinity => Ok(()),
            Point::Finite(v) => self.accepts(v),
        }
    }

    pub(crate) fn check_order(&self, order: usize) -> Result<(), TowerError> {
        if order >= self.orders() {
            return Err(TowerError::OrderOutOfRange { order, orders: self.orders() });
        }
        Ok(())
    }

    pub fn zero(&self) -> Vector {
        Vector::zero_at(self.stamp())
    }

    pub fn unit(&self, gen: GenId) -> Vector {
        assert!(gen.index() < self.gens.len(), "generator out of range");
        Vector::unit_at(self.stamp(), gen)
    }

    /// Builds an element from explicit coordinates.
    pub fn element<I>(&self, coords: I) -> Vector
    where
        I: IntoIterator<Item = (GenId, Scalar)>,
    {
        let mut coeffs: BTreeMap<GenId, Scalar> = BTreeMap::new();
        for (g, c) in coords {
            assert!(g.index() < self.gens.len(), "generator out of range");
            let entry = coeffs.entry(g).or_insert_with(Scalar::zero);
            *entry += &c;
        }
        Vector::from_coeffs(self.stamp(), coeffs)
    }

    /// `c1*x + c2*y` for any two vectors of this tower's history.
    ///
    /// The result carries the younger of the two stamps, so it stays usable
    /// in every extension that knows both inputs.
    pub fn combine(
        &self,
        c1: &Scalar,
        x: &Vector,
        c2: &Scalar,
        y: &Vector,
    ) -> Result<Vector, TowerError> {
        self.accepts(x)?;
        self.accepts(y)?;
        Ok(self.raw_combine(c1, x, c2, y))
    }

    pub(crate) fn raw_combine(&self, c1: &Scalar, x: &Vector, c2: &Scalar, y: &Vector) -> Vector {
        let stamp = if x.stamp().generators() >= y.stamp().generators() { x.stamp() } else { y.stamp() };
        x.restamped(stamp).scale(c1).add_scaled(c2, &y.restamped(stamp))
    }

    pub fn sum(&self, x: &Vector, y: &Vector) -> Result<Vector, TowerError> {
        self.combine(&Scalar::one(), x, &Scalar::one(), y)
    }

    pub fn diff(&self, x: &Vector, y: &Vector) -> Result<Vector, TowerError> {
        self.combine(&Scalar::one(), x, &-Scalar::one(), y)
    }

    pub(crate) fn raw_diff(&self, x: &Vector, y: &Vector) -> Vector {
        self.raw_combine(&Scalar::one(), x, &-Scalar::one(), y)
    }

    /// `c1*x + c2*y` on points; `inf` absorbs.
    pub fn combine_points(
        &self,
        c1: &Scalar,
        x: &Point,
        c2: &Scalar,
        y: &Point,
    ) -> Result<Point, TowerError> {
        self.accepts_point(x)?;
        self.accepts_point(y)?;
        match (x, y) {
            (Point::Infinity, _) | (_, Point::Infinity) => Ok(Point::Infinity),
            (Point::Finite(a), Point::Finite(b)) => Ok(Point::Finite(self.raw_combine(c1, a, c2, b))),
        }
    }

    fn fresh_name(&self, want: Option<&str>) -> Result<String, TowerError> {
        match want {
            Some(name) => {
                if !valid_name(name) {
                    return Err(TowerError::BadName(name.to_string()));
                }
                if self.gens.iter().any(|g| g.name == name) {
                    return Err(TowerError::DuplicateName(name.to_string()));
                }
                Ok(name.to_string())
            }
            None => {
                let mut i = self.gens.len();
                loop {
                    let candidate = format!("g{i}");
                    if self.gens.iter().all(|g| g.name != candidate) {
                        return Ok(candidate);
                    }
                    i += 1;
                }
            }
        }
    }

    fn check_cut(&self, cut: &Cut, position: usize) -> Result<(), TowerError> {
        self.check_order(cut.order)?;
        if cut.order != position {
            return Err(TowerError::CutOrderMismatch { position, order: cut.order });
        }
        if let Some(anchor) = cut.anchor() {
            self.accepts(anchor)?;
        }
        Ok(())
    }

    fn push(&self, name: String, record: GenRecord) -> (Model, Vector) {
        let mut next = self.clone();
        next.gens.push(Gen { name, record });
        next.stamps.push(Stamp::fresh(next.gens.len() as u32));
        let unit = next.unit(GenId(self.gens.len() as u32));
        (next, unit)
    }

    /// Adjoins a free generator realizing one principal cut per order.
    pub fn adjoin_free(
        &self,
        name: Option<&str>,
        cuts: Vec<Cut>,
    ) -> Result<(Model, Vector), TowerError> {
        if self.is_hamel() {
            return Err(TowerError::PlainOnly);
        }
        if cuts.len() != self.orders() {
            return Err(TowerError::WrongCutArity { expected: self.orders(), got: cuts.len() });
        }
        for (i, cut) in cuts.iter().enumerate() {
            self.check_cut(cut, i)?;
        }
        let name = self.fresh_name(name)?;
        Ok(self.push(name, GenRecord::Free { cuts }))
    }

    /// Adjoins a generator that is its own valuation value.
    ///
    /// `cut0` positions it in the first order; its second-order position is
    /// derived from the valuation, so only one cut is given.
    pub fn adjoin_value(&self, name: Option<&str>, cut0: Cut) -> Result<(Model, Vector), TowerError> {
        if !self.is_hamel() {
            return Err(TowerError::HamelOnly);
        }
        self.check_cut(&cut0, 0)?;
        let name = self.fresh_name(name)?;
        Ok(self.push(name, GenRecord::Value { cut0 }))
    }

    /// Adjoins a generator of prescribed value `acut.alpha`.
    ///
    /// `alpha` must be an existing valuation value and the pivot must lie in
    /// the closed ball at `alpha` (zero always does).
    pub fn adjoin_ball(
        &self,
        name: Option<&str>,
        acut: AlphaCut,
        cut0: Cut,
    ) -> Result<(Model, Vector), TowerError> {
        if !self.is_hamel() {
            return Err(TowerError::HamelOnly);
        }
        self.check_cut(&cut0, 0)?;
        self.accepts(&acut.alpha)?;
        self.accepts(&acut.pivot)?;
        if !self.is_value(&acut.alpha)? {
            return Err(TowerError::NotAValue);
        }
        if !acut.pivot.is_zero() {
            let vp = self.valuate(&Point::Finite(acut.pivot.clone()))?;
            if self.point_cmp0(&vp, &Point::Finite(acut.alpha.clone()))? == std::cmp::Ordering::Less {
                return Err(TowerError::PivotOutsideBall);
            }
        }
        let name = self.fresh_name(name)?;
        Ok(self.push(name, GenRecord::Ball { acut, cut0 }))
    }

    /// True for nonzero fixed points of the valuation.
    pub fn is_value(&self, v: &Vector) -> Result<bool, TowerError> {
        if v.is_zero() {
            return Ok(false);
        }
        let val = self.valuate(&Point::Finite(v.clone()))?;
        Ok(val == Point::Finite(v.clone()))
    }

    pub(crate) fn point_cmp0(&self, a: &Point, b: &Point) -> Result<std::cmp::Ordering, TowerError> {
        self.compare(a, b, 0)
    }

    /// Renders the tower as a summary line for diagnostics.
    pub fn describe(&self) -> String {
        let mode = match self.mode {
            Mode::Hamel => "hamel".to_string(),
            Mode::Plain { orders } => format!("plain orders={orders}"),
        };
        format!("{mode} model, {} generators", self.gens.len())
    }
}
