//! Command-line front end for `evidencia-core`.
//!
//! Reads `x,y,sigma` datasets and basis tables, writes criterion tables,
//! Monte Carlo success rates and analytic curves as CSV or JSON, and fans
//! simulations out over a thread pool. Every output carries a manifest with
//! the resolved configuration, seed, version, input digests and timestamp.

pub mod cli;
pub mod commands;
pub mod error;
pub mod input;
pub mod manifest;
pub mod output;
pub mod parallel;

pub use error::{CliError, CliResult};
