use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid edge ({0}, {1}): node id out of range")]
    InvalidEdge(i64, i64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("graph is disconnected: {0}")]
    Disconnected(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("graph is not a tree")]
    NotATree,
    #[error("no interior optimum: u*(c-1) = {0} <= 1")]
    NoInteriorOptimum(f64),
    #[error("generation failed: {0}")]
    GenerationFailed(String),
    #[error("no graph found within budget of {budget} attempts: {reason}")]
    NotFound { budget: usize, reason: String },
    #[error("all {0} runs were censored")]
    AllCensored(usize),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Process exit code for the CLI: 2 invalid params, 3 I/O, 4 computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidEdge(..)
            | Error::InvalidParams(_)
            | Error::Unknown { .. }
            | Error::NoInteriorOptimum(_) => 2,
            Error::Io(_) | Error::Parse { .. } => 3,
            Error::Disconnected(_)
            | Error::TooLarge(_)
            | Error::NotATree
            | Error::GenerationFailed(_)
            | Error::NotFound { .. }
            | Error::AllCensored(_)
            | Error::Numerical(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
