use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Unsupported root system family or rank, malformed configuration.
    #[error("configuration error: {0}")]
    Config(String),
    /// Argument of the wrong shape or from an incompatible object.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// Mathematically undefined input, e.g. an index set outside `I(theta)`.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured size cap would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A proven identity failed to hold; indicates a bug or corrupted input data.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
