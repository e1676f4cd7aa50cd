use thiserror::Error;

/// Errors raised by the builders, reductions and analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A dense 2^n x 2^n matrix would exceed the configured particle-count bound.
    #[error(
        "n = {n} exceeds the configured maximum n = {max_n}; a dense {dim}x{dim} matrix needs about {bytes} bytes"
    )]
    ResourceLimit {
        n: usize,
        max_n: usize,
        dim: u64,
        bytes: u64,
    },

    #[error("unsupported size: {0}")]
    UnsupportedSize(String),

    /// The dense eigensolve is disabled above the configured bound.
    #[error("eigensolve limit: n = {n} exceeds the eigensolve maximum n = {max_n}; use {alternative} instead")]
    EigensolveLimit {
        n: usize,
        max_n: usize,
        alternative: &'static str,
    },

    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    /// Short machine-readable category name.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::ResourceLimit { .. } => "resource-limit",
            Error::UnsupportedSize(_) => "unsupported-size",
            Error::EigensolveLimit { .. } => "eigensolve-limit",
            Error::Domain(_) => "domain",
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
