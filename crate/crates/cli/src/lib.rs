//! Support code for the `ordered-ramsey` command-line tool: the result cache
//! and the reproduction checks.

pub mod cache;
pub mod error;
pub mod repro;

pub use error::{CliError, CliResult};
