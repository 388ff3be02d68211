use thiserror::Error;

/// Errors raised by kernel evaluation, Gram algebra, and the probes built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the kernel's domain.
    #[error("domain violation: {0}")]
    Domain(String),

    /// Malformed or inconsistent input (bad sample set, bad parameters).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// Cholesky factorization hit a non-positive (or numerically vanishing) pivot.
    #[error("matrix is singular or indefinite: non-positive pivot at index {pivot}")]
    Singular { pivot: usize },

    /// Exact integer arithmetic would overflow.
    #[error("exact arithmetic capacity exceeded at (x={x}, n={n})")]
    Capacity { x: u64, n: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// True for failures of the numerics (singular systems, capacity) as opposed
    /// to rejected input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Singular { .. } | Error::Capacity { .. })
    }

    /// Short machine-readable tag for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::InvalidInput(_) => "invalid_input",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::Singular { .. } => "singular",
            Error::Capacity { .. } => "capacity",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::LengthMismatch { expected, got });
    }
    Ok(())
}
