use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by operator construction, model builders, and solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("matrix is not Hermitian: max deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("steady-state solve failed: {0}")]
    SingularSteadyState(String),

    #[error("correlation undefined: mean photon number vanishes")]
    UndefinedCorrelation,

    #[error("analytic expression has a pole: {0}")]
    Pole(String),

    #[error("no real solution: {0}")]
    NoRealSolution(String),

    #[error("linear-algebra backend failure: {0}")]
    Backend(String),
}

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::Backend(e.to_string())
    }
}
