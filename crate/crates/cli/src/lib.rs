//! Command-line front end for `fermispin`: argument handling, result
//! documents, and an on-disk cache of exact density matrices.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod report;

pub use cache::{CacheOutcome, MatrixCache};
pub use config::{Cli, Command, Format, RunConfig};
pub use error::CliError;
