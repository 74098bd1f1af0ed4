use thiserror::Error;

/// Errors produced while building configurations or evaluating metrics.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter set violates one of its invariants.
    #[error("configuration error: {0}")]
    Config(String),

    /// A configuration field failed validation.
    #[error("invalid value at `{path}`: {message}")]
    Constraint { path: String, message: String },

    /// The configuration file could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A numerical evaluation produced a non-finite value.
    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}
