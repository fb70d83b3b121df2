use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid algebra: {}", .0.join("; "))]
    InvalidAlgebra(Vec<String>),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid module map: {0}")]
    InvalidMap(String),
    #[error("modules live over different rings")]
    RingMismatch,
    #[error("polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("polynomial is reducible over F_{0}")]
    NotIrreducible(u32),
    #[error("ring is not a recorded trivial extension of the given base")]
    NotTrivialExtension,
    #[error("{what}: search space {needed} exceeds cap {cap}")]
    CapExceeded { what: String, needed: String, cap: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed interchange text: {0}")]
    Format(String),
    #[error("non-composable sequence at position {0}")]
    NotComposable(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn cap(what: impl Into<String>, needed: impl ToString, cap: u64) -> Self {
        Error::CapExceeded {
            what: what.into(),
            needed: needed.to_string(),
            cap,
        }
    }

    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}
