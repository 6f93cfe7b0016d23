use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DnError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree {0} exceeds the supported maximum")]
    DegreeTooLarge(usize),
    #[error("not a bijection: {0}")]
    NotABijection(String),
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    InvalidCase(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("expected {expected} vertex labels, got {got}")]
    PartitionLength { expected: usize, got: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, DnError>;
