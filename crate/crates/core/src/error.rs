use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the simulator.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("singular channel: composite matrix is rank deficient")]
    SingularChannel,
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("config error at line {line}, key `{key}`: {message}")]
    Config {
        line: usize,
        key: String,
        message: String,
    },
    #[error("malformed CSV at row {row}: {message}")]
    Csv { row: usize, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn config(line: usize, key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            line,
            key: key.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
