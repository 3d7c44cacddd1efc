use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid asset name {0:?}: no letters or digits remain after normalization")]
    InvalidName(String),

    #[error("unknown node: {0}")]
    NotFound(String),

    #[error("invalid date range: {from} is after {to}")]
    InvalidRange { from: String, to: String },

    #[error("invalid table spec: {0}")]
    InvalidSpec(String),

    #[error("present values must be nonempty")]
    EmptyValue,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
