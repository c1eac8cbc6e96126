use thiserror::Error;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input documents.
    Parse,
    /// Inputs that parse but violate a mathematical precondition.
    Domain,
    /// A computation would leave the exact part of a truncated space.
    Budget,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("words are not equivalent: {0}")]
    NotEquivalent(String),
    #[error("word is not reduced: {0}")]
    NotReduced(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("letter at position {position} is not centered (state value {value:e})")]
    NotCentered { position: usize, value: f64 },
    #[error("state is not faithful: minimum eigenvalue {0:e}")]
    NonFaithful(f64),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid ucp map: {0}")]
    InvalidUcp(String),
    #[error("fusion data incomplete for pair ({0}, {1})")]
    IncompleteFusion(String, String),
    #[error("invalid fusion data: {0}")]
    InvalidFusion(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("reach {reach} exceeds the exactness budget {budget}")]
    Budget { reach: usize, budget: usize },
    #[error("size {size} exceeds the configured cap {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("window exceeds validity zone: {0}")]
    Window(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_) => ErrorKind::Parse,
            Error::Budget { .. } | Error::SizeCap { .. } | Error::Window(_) => ErrorKind::Budget,
            _ => ErrorKind::Domain,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
