use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Parse` and `Invalid` are caller mistakes (bad literals, bad arguments);
/// `NotAComplex` and `Internal` mean a construction that should be a complex
/// or a split summand failed a runtime check and the result cannot be trusted.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("malformed complex: composite of consecutive differentials is nonzero at degree {degree}")]
    NotAComplex { degree: usize },

    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
