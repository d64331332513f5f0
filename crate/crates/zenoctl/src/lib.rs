//! Command-line front end for the belief-action Zeno experiments: config
//! resolution, experiment dispatch and CSV output.

pub mod cli;
pub mod config;
pub mod output;
pub mod run;

pub use config::{ConfigError, Experiment, RunConfig};
pub use run::{execute, run_cli, Outcome, RunError};
