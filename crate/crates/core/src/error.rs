use thiserror::Error;

/// Errors produced by evaluation, comparison, auditing and rendering.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the open domain of the operation.
    #[error("{what} out of domain: {value} (expected {expected})")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// Parameter count does not match what a form or family requires.
    #[error("{target} expects {expected} parameters, got {got}")]
    Arity {
        target: String,
        expected: String,
        got: usize,
    },

    /// A computed argument fraction left (0,1). Never clamped.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("invalid audit configuration: {0}")]
    Config(String),

    /// The requested audit kind or output format does not apply.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("report serialization: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        what,
        value,
        expected,
    }
}
