use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partition {0} is not weakly decreasing")]
    NotAPartition(String),
    #[error("{mu} is not contained in {lambda}")]
    Containment { lambda: String, mu: String },
    #[error("symplectic groups need an even dimension, got {0}")]
    Parity(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at the limit point: {0}")]
    PoleAtLimit(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("a non-skew shape is required, got {0}")]
    SkewShape(String),
    #[error("tableau is not the {0} tableau of its shape")]
    WrongTableau(&'static str),
    #[error("formula not applicable: {0}")]
    NotApplicable(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("bilinear form is singular")]
    SingularForm,
    #[error("invalid bilinear form: {0}")]
    InvalidForm(String),
    #[error("ambient spaces differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("sample point lies on a pole: {0}")]
    SampleAtPole(String),
    #[error("s_{0} applied to the tableau is not standard")]
    NonStandardNeighbor(usize),
    #[error("size limit exceeded: {size} > {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
