use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("k = {k} out of range for n = {n}")]
    KOutOfRange { k: usize, n: usize },

    #[error("need at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },

    #[error("need k >= {min}, got {k}")]
    KTooSmall { k: usize, min: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("plane index {plane} out of range 1..={planes}")]
    PlaneOutOfRange { plane: usize, planes: usize },

    #[error("plane indices must differ (got i = j = {0})")]
    SamePlane(usize),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("(u_i, u_j) = ({0}, {1}) is an excluded pair")]
    ExcludedPair(usize, usize),

    #[error("n = {0} must be even")]
    OddVertexCount(usize),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("singular system: {0}")]
    Singular(String),
}
