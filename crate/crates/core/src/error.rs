use thiserror::Error;

/// Failures of the exact arithmetic kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("points do not span a hyperplane (affinely dependent)")]
    DegenerateSpan,
    #[error("elimination produced {rows} constraints, cap is {cap}")]
    CapExceeded { rows: usize, cap: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("hyperplane does not meet the polytope")]
    NoIntersection,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("limit exceeded: {0}")]
    CapExceeded(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
