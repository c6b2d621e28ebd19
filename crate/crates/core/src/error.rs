use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A point or radius outside the region an operation is defined on.
    #[error("domain violation: {0}")]
    Domain(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid class parameters: {0}")]
    InvalidParams(String),

    #[error("normalization violated: {0}")]
    Normalization(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The quantity under test vanishes, so the geometric test is undefined.
    #[error("degenerate: {0}")]
    Degenerate(String),

    /// A bracket that the theory guarantees failed to show a sign change.
    #[error("internal consistency: {0}")]
    Consistency(String),

    #[error("schema violation at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
