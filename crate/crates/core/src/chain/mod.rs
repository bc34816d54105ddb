//! The chain, its compactifications and the maps between them.

mod gap;
mod lattice;
mod point;
mod stabilizer;

pub use gap::{rational_between, GapCut, Level};
pub use lattice::{
    arrow, in_collapsed_fiber, lattice_arrows, lift, quotient_along, quotient_point, Arrow,
};
pub use point::{cmp_extended, make_gap, ExtendedPoint, Space, Tag};
pub use stabilizer::{cell_index, refines, stabilizer_partition, Cell};
