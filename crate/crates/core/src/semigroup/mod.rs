//! Finite monoids: closure, inverse axioms, ideals and Rees quotients.

mod ideals;
mod monoid;
mod rees;

pub use ideals::{enumerate_all_ideals, rank_ideal, IdealSet, DEFAULT_IDEAL_CAP};
pub use monoid::{
    check_homomorphism, check_inverse_monoid, close_under_composition, FiniteMonoid, InverseReport,
    MonoidJson, DEFAULT_CLOSURE_CAP,
};
pub use rees::{rees_quotient, ReesQuotient};
