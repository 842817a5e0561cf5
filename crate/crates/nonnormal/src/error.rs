use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("variance profile rejected: {0}")]
    InadmissibleProfile(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("spectral solver did not converge")]
    SolverFailed,
    #[error("quadrature stalled before the target accuracy (achieved {achieved:.3e})")]
    Quadrature { achieved: f64 },
    #[error("evaluation point must lie in the open upper half-plane (Im z = {0})")]
    NotUpperHalfPlane(f64),
    #[error("empty measure")]
    EmptyMeasure,
    #[error("config error: {0}")]
    Config(String),
    #[error("audit error: {0}")]
    Audit(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
