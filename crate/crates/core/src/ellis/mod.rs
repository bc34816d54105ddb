//! Enveloping semigroups of chain automorphism groups, seen through finite
//! observations and finite traces.

pub(crate) mod bounds;
mod element;
mod membership;
mod observation;
mod quotient;

pub use element::{ellis_compose, xi_restrict, EllisElementFin};
pub use membership::{
    check_alpha_membership, check_bm_membership, check_br_membership, check_cm_membership,
    check_cx_membership, check_membership, membership_violations,
};
pub use observation::{Clause, Entry, GroupKind, Membership, Observation, Target, Verdict};
pub use quotient::{
    check_ef_ideal, induce_quotient_obs, rees_correspondence, ChainModel, EfIdeal, PointMap,
    ReesCorrespondence,
};
