//! Input errors. Every variant maps to exit status 2.

use thiserror::Error;

/// Failure to obtain a well-formed job: unreadable or malformed input, or a
/// library rejection of the supplied data.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}:{line}:{column}: {message}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] livsic_core::Error),
}

impl CliError {
    /// Process exit status for input errors.
    pub const EXIT_CODE: i32 = 2;
}
