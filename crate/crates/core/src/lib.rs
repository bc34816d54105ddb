//! Exact computational models of ordered chains, their compactifications,
//! finite inverse monoids and the enveloping semigroups of chain
//! automorphism groups.

pub mod approx;
pub mod chain;
pub mod ellis;
pub mod error;
pub mod partial;
pub mod sample;
pub mod scalar;
pub mod semigroup;

pub use error::{Error, Result};
pub use scalar::{BigRational, Rational128, Rational64, Scalar};

pub type Rational = BigRational;
pub type QPoint = chain::ExtendedPoint<Rational>;
pub type QGapCut = chain::GapCut<Rational>;
pub type QObservation = ellis::Observation<Rational>;
pub type QPlAutomorphism = approx::PLAutomorphism<Rational>;
