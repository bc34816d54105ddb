//! Group elements realizing finite observations, and the approximations
//! behind the uniform-structure comparisons.

mod pl;
mod starstar;
mod witness;

pub use pl::{pl_witness, PLAutomorphism};
pub use starstar::{star_star_witness, Entourage};
pub use witness::{ellis_witness, permutation_witness, FinitePermutationWitness};
