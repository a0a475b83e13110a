use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("unknown vertex: {0}")]
    UnknownVertex(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("module is truncated; {0} needs a complete module")]
    Truncated(&'static str),
    #[error("unsupported generator {0} on an algebraic module")]
    UnsupportedGenerator(String),
    #[error("calibration failed: {0}")]
    Calibration(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), e))
    }
}
