use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is singular: pivot {pivot:e} at column {column} below threshold {threshold:e}")]
    Singular {
        column: usize,
        pivot: f64,
        threshold: f64,
    },

    #[error("{routine} did not converge after {iterations} iterations")]
    NoConvergence {
        routine: &'static str,
        iterations: usize,
    },

    #[error("matrix is not normal: ||A*A - AA*|| = {commutator:e}")]
    NotNormal { commutator: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("spectral radius {spectral_radius} is not inside the contour radius {radius}")]
    Contour { spectral_radius: f64, radius: f64 },

    #[error("contour quadrature did not converge: N vs 2N discrepancy {discrepancy:e}")]
    Accuracy { discrepancy: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
