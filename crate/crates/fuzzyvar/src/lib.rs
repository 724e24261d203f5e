//! File formats and command-line front end for `fuzzyvar-core`.

// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod error;
pub mod formats;

pub use error::{CliError, CliResult};
