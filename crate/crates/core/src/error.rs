use thiserror::Error;

use crate::chain::Space;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {point} is not a point of {space}")]
    IllegalPoint { space: Space, point: String },

    #[error("gap coefficient of sqrt(2) must be nonzero (rational cut)")]
    RationalCut,

    #[error("no quotient map {from} -> {to}")]
    NoArrow { from: Space, to: Space },

    #[error("stabilizer partition needs a nonempty set of distinct points")]
    EmptySigma,

    #[error("partial maps live on different carriers")]
    CarrierMismatch,

    #[error("{what} exceeds the configured cap ({size} > {cap})")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("monoid elements are not partial bijections")]
    NotPartialMapMonoid,

    #[error("index set is not a two-sided ideal")]
    NotAnIdeal,

    #[error("illegal observation: {0}")]
    IllegalObservation(String),

    #[error("Ellis elements live on different spaces or carriers")]
    SpaceMismatch,

    #[error("quotient map {from} -> {to} is not elementary")]
    NotElementary { from: Space, to: Space },

    #[error("pairs are not monotone: {0}")]
    NotMonotonePairs(String),

    #[error("observation is refuted by clause {0}")]
    Inconsistent(String),

    #[error("no single automorphism realizes the target: {0}")]
    UnwitnessableTarget(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
