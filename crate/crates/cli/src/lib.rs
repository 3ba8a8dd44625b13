//! Command-line front end for `grl-core`: spec files, checks, analyses,
//! searches and the embedded example suite.

pub mod commands;
pub mod report;
pub mod specfile;
pub mod verify;

pub use commands::{execute, run, Cli, Command};
pub use report::{CliError, Outcome, RunReport};
pub use specfile::{JobFile, SpecFile};
