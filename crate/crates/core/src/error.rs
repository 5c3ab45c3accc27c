use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Well-formed input that exceeds a documented size limit.
    #[error("refused: {0}")]
    Refused(String),

    /// Two cells of a complex meet in something other than a common face.
    #[error("cells {first} and {second} do not meet in a common face: {reason}")]
    ComplexViolation {
        first: String,
        second: String,
        reason: String,
    },

    /// The lattice-point search for a periodic envelope outgrew its window.
    #[error("window exceeded: needed sup-norm radius {needed}, limit {limit}")]
    WindowExceeded { needed: String, limit: i64 },

    /// An internal consistency check failed. Always a bug.
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::Refused(_) => "size_limit",
            Error::ComplexViolation { .. } => "complex_violation",
            Error::WindowExceeded { .. } => "window_exceeded",
            Error::Internal(_) => "internal",
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
