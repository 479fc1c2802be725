use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("{0} is not a supported prime modulus (primes below 65536)")]
    InvalidModulus(u32),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("budget exceeded: {what} needs {requested}, limit is {limit}")]
    Budget {
        what: &'static str,
        requested: String,
        limit: String,
    },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("consistency violation: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
