use thiserror::Error;

/// Errors raised when values or configurations fall outside an instance's domain.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A point or element violates the instance's domain (zero exponent, singular matrix, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Inputs that do not belong together, such as vectors of mismatched dimension.
    #[error("usage error: {0}")]
    Usage(String),
    /// A configuration document that cannot be turned into an instance or presentation.
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
