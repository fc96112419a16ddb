use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{0}: zero polynomial not allowed")]
    ZeroPolynomial(&'static str),
    #[error("division is not exact")]
    InexactDivision,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }

    /// Prefixes the message, keeping the kind.
    pub fn context(self, what: impl std::fmt::Display) -> Self {
        match self {
            Error::Invalid(m) => Error::Invalid(format!("{what}: {m}")),
            Error::Unsupported(m) => Error::Unsupported(format!("{what}: {m}")),
            Error::Verification(m) => Error::Verification(format!("{what}: {m}")),
            other => Error::Invalid(format!("{what}: {other}")),
        }
    }
}
