use std::io;

use centro_core::ErrorKind;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: io::Error,
    },

    /// `line` is 0 when the failure has no position (for example a shape
    /// mismatch found after parsing).
    #[error("invalid input in {path}{}: {message}", location(*line, *column))]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] centro_core::Error),
}

fn location(line: usize, column: usize) -> String {
    if line == 0 {
        String::new()
    } else {
        format!(" at line {line}, column {column}")
    }
}

impl CliError {
    /// 2 for unusable input, 1 for a well-formed request that failed.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.kind() != ErrorKind::Input => 1,
            CliError::Write { .. } => 1,
            _ => 2,
        }
    }
}
