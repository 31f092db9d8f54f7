//! Exact scalars, polynomials and rational functions in the dimension symbol.

mod bareiss;
mod laurent;
mod poly;
mod ratfunc;
mod scalar;

pub use bareiss::{bareiss_eliminate, bareiss_solve, bareiss_solve_scalar, ExactRing};
pub use laurent::{laurent_expand, LaurentSeries};
pub use poly::DimPoly;
pub use ratfunc::RationalFunction;
pub use scalar::rational_to_f64;
pub use scalar::ExactScalar;
