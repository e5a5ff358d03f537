use std::process::ExitCode;

use thiserror::Error;

/// Failures of a CLI run, each tied to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, config file or parameter set.
    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] kgws::Error),

    /// Verification found unmatched or failing levels.
    #[error("verification failed: {0}")]
    Mismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub const EXIT_CONFIG: u8 = 2;
    pub const EXIT_MISMATCH: u8 = 3;

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Core(_) => Self::EXIT_CONFIG,
            CliError::Mismatch(_) => Self::EXIT_MISMATCH,
            CliError::Io(_) | CliError::Json(_) => 1,
        }
    }
}

impl From<CliError> for ExitCode {
    fn from(e: CliError) -> Self {
        ExitCode::from(e.exit_code())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
