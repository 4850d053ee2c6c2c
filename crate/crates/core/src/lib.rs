//! Exact multiplicity oracles for polynomial vector fields, Newton-polytope
//! kernels, and evaluators for degree- and polytope-based multiplicity bounds.

pub mod bounds;
pub mod error;
pub mod experiment;
pub mod io;
pub mod linalg;
pub mod multiplicity;
pub mod poly;
pub mod polytope;
pub mod rational;
pub mod witness;

pub use error::{Error, Result};
pub use poly::{Mode, Polynomial, VectorField};
pub use polytope::LatticePolytope;
pub use rational::RationalPoint;
