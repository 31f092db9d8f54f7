//! Command implementations behind the `haarint` binary, plus the
//! sampling helpers used to cross-check exact results.

pub mod bench;
pub mod commands;
pub mod error;
pub mod json;
pub mod montecarlo;

pub use commands::Output;
pub use error::CliError;
