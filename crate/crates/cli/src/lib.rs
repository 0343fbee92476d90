//! Command implementations behind the `oam-mzi` binary.
//!
//! Each `cmd_*` function returns the text it would emit, so the binary only
//! has to route it to stdout or a file and map errors to exit codes.

pub mod args;
pub mod commands;
pub mod output;
pub mod verify;

pub use args::{BudgetArgs, Cli, Command, InputArgs, ModesArgs, ShotsArgs, SweepArgs, VerifyArgs};
pub use commands::{cmd_budget, cmd_modes, cmd_shots, cmd_sweep, cmd_verify, VerifyOutcome};

use oam_mzi::Error as CoreError;

/// Version of every CSV and JSON layout written by the CLI.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("degenerate physics: {0}")]
    Degenerate(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::Validation(_) | CliError::Io(_) => 2,
            CliError::Degenerate(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::ZeroSlope | CoreError::NoFringeScale | CoreError::DegenerateResponse => {
                CliError::Degenerate(e.to_string())
            }
            _ => CliError::Validation(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
