//! Exact rational scalars.
//!
//! Every quantity in the engine is a ratio of arbitrary-precision integers,
//! kept in lowest terms with a positive denominator. There is no floating
//! point anywhere: ordering and arithmetic are exact, so decision procedures
//! built on top of [`Scalar`] never suffer rounding drift.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Error raised by scalar construction or arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational `{0}`: expected `int` or `int/posint`")]
    Malformed(String),
}

/// An exact rational number.
///
/// Internally a reduced `BigRational`; the wrapper pins down the textual
/// form `int` or `int/posint` used across expressions, model files and
/// reports, and makes division checked.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `num/den`, reducing to canonical form.
    pub fn new(num: i64, den: i64) -> Result<Self, ScalarError> {
        if den == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Sign as an ordering against zero.
    pub fn sign(&self) -> Ordering {
        self.0.cmp(&BigRational::zero())
    }

    /// Checked division; the only fallible field operation.
    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar(&self.0 / &rhs.0))
    }

    /// Multiplicative inverse of a nonzero scalar.
    pub fn recip(&self) -> Result<Scalar, ScalarError> {
        Scalar::one().checked_div(self)
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    /// Parses `int` or `int/posint`, e.g. `-3`, `5/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ScalarError::Malformed(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = match den {
            Some(d) => {
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if !d.is_positive() {
                    return Err(bad());
                }
                d
            }
            None => BigInt::one(),
        };
        Ok(Scalar(BigRational::new(num, den)))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

/// Unchecked division, for contexts that have already excluded zero.
impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.checked_div(&rhs).expect("scalar division by zero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn arithmetic_and_canonical_form() {
        assert_eq!(s("1/2") + s("1/3"), s("5/6"));
        assert_eq!(s("2/4"), s("1/2"));
        assert_eq!(s("-2/4").to_string(), "-1/2");
        assert_eq!((s("3") * s("1/3")).to_string(), "1");
        assert_eq!(s("7").checked_div(&s("-2")).unwrap(), s("-7/2"));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(s("1").checked_div(&s("0")), Err(ScalarError::DivisionByZero));
        assert_eq!(Scalar::new(1, 0), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("1/-2".parse::<Scalar>().is_err());
        assert!("".parse::<Scalar>().is_err());
        assert!("a/2".parse::<Scalar>().is_err());
    }

    #[test]
    fn ordering_is_dense_total() {
        assert!(s("1/3") < s("1/2"));
        assert!(s("-5") < s("0"));
        assert_eq!(s("2/6").cmp(&s("1/3")), Ordering::Equal);
    }

    use proptest::prelude::*;

    fn rational() -> impl Strategy<Value = Scalar> {
        (any::<i32>(), 1i64..=1000).prop_map(|(n, d)| Scalar::new(n as i64, d).unwrap())
    }

    proptest! {
        #[test]
        fn field_laws(a in rational(), b in rational(), c in rational()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &(-&a), Scalar::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.recip().unwrap(), Scalar::one());
            }
        }

        #[test]
        fn text_round_trips(a in rational()) {
            prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
        }

        #[test]
        fn order_is_dense_and_translation_invariant(
            a in rational(),
            b in rational(),
            c in rational(),
        ) {
            if a < b {
                let mid = &(&a + &b) * &Scalar::new(1, 2).unwrap();
                prop_assert!(a < mid && mid < b);
            }
            prop_assert_eq!(a.cmp(&b), (&a + &c).cmp(&(&b + &c)));
        }
    }
}
