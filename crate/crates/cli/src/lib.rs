//! Batch commands over the `epicox` pipeline: reading graphs, building
//! `C_Gamma`, reconstruction, the end-to-end theorem check and the
//! acceptance runner.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod outcome;
pub mod theorem;

pub use config::{OutputFormat, RunConfig};
pub use outcome::{CliError, ExitStatus};
