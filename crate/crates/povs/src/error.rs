//! Crate-wide error type.

use crate::ttest::Method;

/// Errors produced by any part of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative numerical routine failed to converge.
    #[error("{what} did not converge within {iterations} iterations")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
    },

    /// A CSV data row could not be parsed. Rows are numbered from 1,
    /// not counting the header.
    #[error("row {row}: {message}")]
    Parse { row: usize, message: String },

    /// The CSV header is missing or malformed.
    #[error("{0}")]
    MissingHeader(String),

    /// Too few observations to compute the requested quantity.
    #[error("{0}")]
    InsufficientData(String),

    /// A test statistic has no signal to work with (zero pooled variance,
    /// non-positive variance bracket).
    #[error("degenerate statistic: {0}")]
    Degenerate(String),

    /// An error raised while evaluating a specific test method.
    #[error("{method}: {source}")]
    Test {
        method: Method,
        #[source]
        source: Box<Error>,
    },

    /// A simulation design grid is empty.
    #[error("empty grid: {0}")]
    EmptyGrid(&'static str),

    /// H0 and H1 result sets do not describe the same design.
    #[error("design mismatch: {0}")]
    DesignMismatch(String),

    /// A campaign configuration is invalid.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True when the root cause is a degenerate statistic (as opposed to
    /// bad input). The CLI maps this to its own exit code.
    pub fn is_degenerate(&self) -> bool {
        match self {
            Error::Degenerate(_) => true,
            Error::Test { source, .. } => source.is_degenerate(),
            _ => false,
        }
    }

    /// Attaches the method that was being evaluated when the error arose.
    pub(crate) fn for_method(self, method: Method) -> Error {
        Error::Test {
            method,
            source: Box::new(self),
        }
    }
}
