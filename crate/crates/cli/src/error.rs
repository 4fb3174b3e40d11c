use std::io;
use std::path::PathBuf;

use digrho_core::Error as CoreError;

/// Exit code for bad input, unmet preconditions and usage errors.
pub const EXIT_PRECONDITION: u8 = 2;
/// Exit code for failures that indicate a bug or a numerical breakdown.
pub const EXIT_INTERNAL: u8 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: line {line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },
    #[error("cannot read {path}: {source}")]
    Input { path: PathBuf, source: io::Error },
    #[error("cannot write output: {0}")]
    Output(#[from] io::Error),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Input { .. } => EXIT_PRECONDITION,
            CliError::Output(_) | CliError::Internal(_) => EXIT_INTERNAL,
            CliError::Core(err) => match err {
                CoreError::NotConverged { .. }
                | CoreError::NormalizationStalled { .. }
                | CoreError::RewireNotMonotone { .. }
                | CoreError::CrossCheck { .. } => EXIT_INTERNAL,
                _ => EXIT_PRECONDITION,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
