use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("resource limit exceeded: {what} needs {requested}, cap is {cap}")]
    ResourceLimit {
        what: String,
        requested: u128,
        cap: u128,
    },

    /// Branch-and-bound ran out of node budget; the bounds known so far are attached.
    #[error("node budget of {budget} exhausted (best known {best:?}, bound {bound})")]
    BudgetExhausted {
        budget: u64,
        best: Option<usize>,
        bound: String,
    },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("unknown experiment: {0}")]
    UnknownExperiment(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
