//! Lattice polytopes: Newton polytopes, Minkowski sums, exact volumes,
//! mixed volumes, quermassintegrals and Bernstein–Kushnirenko counts.

mod coideal;
mod hull;
mod lattice;
mod mixed;

pub use coideal::{coideal_closure, is_coideal, CoIdealSet};
pub use lattice::LatticePolytope;
pub use mixed::{bk_count, mixed_volume, quermassintegral};
