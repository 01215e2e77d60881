//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside a function's domain (nonpositive integer, non-unit
    /// residue, point off the curve, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed database line.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Referential problems in the loaded database (duplicate labels,
    /// degree records without curves, missing files).
    #[error("database error: {0}")]
    Database(String),

    /// A lookup failed.
    #[error("not found: {0}")]
    NotFound(String),

    /// Numerical result too ambiguous to round or identify at the working
    /// precision. Carries what was being computed and the residual seen.
    #[error("precision failure in {what}: residual {residual:.3e} (limit {limit:.1e})")]
    Precision {
        what: String,
        residual: f64,
        limit: f64,
    },

    /// A quantity the theory asserts to be an integer failed to round,
    /// or two equivalent criteria disagreed; indicates a bug rather than
    /// bad luck.
    #[error("integrality/consistency failure: {0}")]
    Consistency(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
