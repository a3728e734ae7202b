use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// The requested operation would leave the supported term algebra.
    #[error("algebra closure: {0}")]
    Closure(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("domain: {0}")]
    Domain(String),
    /// An internal consistency check failed (for instance a kernel that
    /// should be one-dimensional was not).
    #[error("consistency: {0}")]
    Consistency(String),
}

impl Error {
    /// Process exit code for the command-line surface.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Closure(_) => 3,
            Error::Usage(_) | Error::Domain(_) => 4,
            Error::Consistency(_) => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
