//! Exact moments of polynomial functions of random matrices.
//!
//! Results are exact rational functions of a formal dimension `d` (or exact
//! values at a concrete dimension). The crate is `no_std` and needs only
//! `alloc`.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod asymptotics;
pub mod cache;
pub mod combinatorics;
pub mod entrywise;
pub mod error;
pub mod expression;
pub mod hciz;
pub mod measure;
pub mod trace;
pub mod weingarten;

pub use algebra::{DimPoly, ExactScalar, LaurentSeries, RationalFunction};
pub use error::{Error, Result};
