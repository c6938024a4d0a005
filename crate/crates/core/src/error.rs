use thiserror::Error;

/// Errors raised by the frame library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NonSymmetric { asymmetry: f64 },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error(
        "operator is singular (smallest eigenvalue {lambda_min:e} <= tolerance {tolerance:e})"
    )]
    SingularOperator { lambda_min: f64, tolerance: f64 },

    #[error(
        "family is not a frame (smallest eigenvalue {lambda_min:e} <= tolerance {tolerance:e})"
    )]
    NotAFrame { lambda_min: f64, tolerance: f64 },

    #[error("frame is not tight (condition number {condition_number})")]
    NotTight { condition_number: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid indices: {0}")]
    InvalidIndices(String),

    #[error("operation requires dimension 2, got {dim}")]
    WrongDimension { dim: usize },

    #[error("every vector of the frame is zero")]
    AllZero,

    #[error("a frame needs at least one vector and a positive dimension")]
    Empty,

    #[error("non-finite value at {0}")]
    NonFinite(String),
}

impl FrameError {
    /// True for failures of the mathematics (as opposed to malformed requests).
    pub fn is_mathematical(&self) -> bool {
        matches!(
            self,
            FrameError::NoConvergence { .. }
                | FrameError::SingularOperator { .. }
                | FrameError::NotAFrame { .. }
                | FrameError::NotTight { .. }
                | FrameError::AllZero
        )
    }
}

pub type Result<T> = std::result::Result<T, FrameError>;
