//! Exact scalar types usable as polynomial coefficients.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// An exact field of characteristic zero embedded in the rationals.
///
/// Every geometric routine in this crate is generic over `Scalar`; nothing here
/// is ever instantiated with a floating point type. Conversions to and from
/// [`BigRational`] are used by the parser and by rational-root search.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + PartialOrd
    + Ord
    + Hash
    + Num
    + Signed
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    /// Builds `numer / denom`, or `None` if it does not fit the representation.
    fn from_ratio(numer: &BigInt, denom: &BigInt) -> Option<Self>;

    fn to_big_rational(&self) -> BigRational;

    fn from_big_rational(value: &BigRational) -> Option<Self> {
        Self::from_ratio(value.numer(), value.denom())
    }

    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("i64 always embeds in an exact rational type")
    }

    /// True when the value is an integer.
    fn is_integral(&self) -> bool;
}

impl Scalar for BigRational {
    fn from_ratio(numer: &BigInt, denom: &BigInt) -> Option<Self> {
        if denom == &BigInt::from(0) {
            return None;
        }
        Some(Ratio::new(numer.clone(), denom.clone()))
    }

    fn to_big_rational(&self) -> BigRational {
        self.clone()
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

impl Scalar for Ratio<i64> {
    fn from_ratio(numer: &BigInt, denom: &BigInt) -> Option<Self> {
        if denom == &BigInt::from(0) {
            return None;
        }
        let r = Ratio::new(numer.clone(), denom.clone());
        Some(Ratio::new(r.numer().to_i64()?, r.denom().to_i64()?))
    }

    fn to_big_rational(&self) -> BigRational {
        Ratio::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}
