//! Machine-readable run reports and the exit-code contract.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// The command line as invoked, program name excluded.
    pub command: Vec<String>,
    pub results: serde_json::Value,
    pub timing_micros: u64,
    pub exit_status: i32,
}

/// What a command produced: human text, JSON results and an exit status.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: i32,
    pub human: String,
    pub results: serde_json::Value,
    /// Footer text for standard error.
    pub stderr: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct CliError {
    pub status: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError { status: EXIT_USAGE, message: message.into() }
    }
}

impl From<grl_core::Error> for CliError {
    fn from(e: grl_core::Error) -> CliError {
        let status = match e {
            grl_core::Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        CliError { status, message: e.to_string() }
    }
}
