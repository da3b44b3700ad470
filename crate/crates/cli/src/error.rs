use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {error}")]
    Op {
        line: usize,
        error: rangemode::Error,
    },
    #[error(transparent)]
    Engine(#[from] rangemode::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            line,
            message: message.into(),
        }
    }

    /// 1-based line number the error refers to, if any.
    pub fn line(&self) -> Option<usize> {
        match self {
            CliError::Parse { line, .. } | CliError::Op { line, .. } => Some(*line),
            _ => None,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
