//! Command-line front end for `koblab-core`.
//!
//! Every command builds a [`config::RunConfig`], runs deterministically and
//! emits one JSON record (or CSV rows) on stdout or `--output`.

pub mod checks;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{run, Cli};
pub use error::CliError;
