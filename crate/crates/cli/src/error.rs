use relrank_core::Error as CoreError;
use thiserror::Error;

/// Command failures, each tied to one process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(CoreError),
}

impl CliError {
    pub fn parse(line: usize, message: impl std::fmt::Display) -> CliError {
        CliError::Parse(format!("line {line}: {message}"))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io { .. } => crate::EXIT_PARSE,
            CliError::UnknownLabel(_) => crate::EXIT_UNKNOWN_LABEL,
            CliError::Precondition(_) => crate::EXIT_PRECONDITION,
            CliError::Core(CoreError::Axioms(_)) => crate::EXIT_VIOLATION,
            CliError::Core(_) => crate::EXIT_PRECONDITION,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        match e {
            CoreError::UnknownLabel(l) => CliError::UnknownLabel(l),
            CoreError::Precondition(m) => CliError::Precondition(m),
            CoreError::NotNested => CliError::Precondition("B must be a subset of A".into()),
            other => CliError::Core(other),
        }
    }
}
