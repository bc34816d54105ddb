//! Exact ordered-field scalars.
//!
//! Everything in this crate is generic over [`Scalar`]. The trait is only
//! implemented for exact rational types: the comparisons against quadratic
//! cuts and the witness constructions rely on exact equality, so there is no
//! floating-point instance.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// An exact ordered field in which the chain lives.
pub trait Scalar:
    Clone + Ord + Hash + Debug + Display + FromStr + Num + Signed + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;

    fn half(&self) -> Self {
        self.clone() / Self::from_i64(2)
    }

    fn midpoint(a: &Self, b: &Self) -> Self {
        (a.clone() + b.clone()).half()
    }

    /// Canonical text form: `p/q`, or `p` when the denominator is one.
    fn to_text(&self) -> String {
        self.to_string()
    }

    fn parse_text(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() {
            return None;
        }
        let v = s.parse::<Self>().ok()?;
        Some(v)
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Integer
        + Signed
        + Clone
        + Hash
        + Debug
        + Display
        + FromStr
        + From<i64>
        + Send
        + Sync
        + 'static,
{
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(T::from(v))
    }
}

/// Arbitrary-precision rationals; the default scalar for the CLI and fixtures.
pub type BigRational = Ratio<BigInt>;

/// Machine-word rationals. Overflow panics, so these suit small test inputs.
pub type Rational64 = Ratio<i64>;
pub type Rational128 = Ratio<i128>;

/// Shorthand for building scalars in tests and generators.
pub fn q<S: Scalar>(numer: i64, denom: i64) -> S {
    S::from_i64(numer) / S::from_i64(denom)
}
