use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EfpError {
    /// An argument lies outside the region where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension error: expected a square matrix, got {rows}x{cols}")]
    Dimension { rows: usize, cols: usize },

    /// Brute-force enumeration would exceed the configured term budget.
    #[error("resource error: enumeration needs {terms} terms, limit is {limit}")]
    Resource { terms: u128, limit: u128 },

    /// An exact division that must leave no remainder did leave one.
    #[error("identity violation: {0}")]
    IdentityViolation(String),

    #[error("resolvent evaluated on its cut at z = {re} + {im}i; use the density instead")]
    OnCut { re: f64, im: f64 },

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, EfpError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(EfpError::Domain(msg.into()))
}
