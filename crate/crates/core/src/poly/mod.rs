//! Exact sparse Laurent polynomials, vector fields and their Lie-derivative machinery.

mod deformation;
mod field;
mod parse;
mod polynomial;
mod series;

pub use deformation::{make_deformation, Deformation};
pub use field::VectorField;
pub use parse::parse_poly;
pub use polynomial::{Exponent, Mode, Polynomial};
pub use series::{compose, trajectory_series, Series, SeriesVector};
