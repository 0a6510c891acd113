use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid too small: extent {extent} is below the required extent {required}")]
    GridTooSmall { extent: f64, required: f64 },

    #[error("grid specifications do not match")]
    GridMismatch,

    #[error("degenerate map parameter: {0}")]
    DegenerateParameter(String),

    #[error("input not normalized: quadrature norm {norm} (expected 1 within {tolerance:e})")]
    NotNormalized { norm: f64, tolerance: f64 },

    #[error("matrix not Hermitian within {tolerance:e} (deviation {deviation:e})")]
    NotHermitian { tolerance: f64, deviation: f64 },

    #[error("matrix not symmetric within {tolerance:e}")]
    NotSymmetric { tolerance: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error(
        "truncation dim {dim} not resolved by the grid: spacing {spacing} exceeds {max_spacing} \
         (use a finer grid or a smaller dim)"
    )]
    UnderResolved { dim: usize, spacing: f64, max_spacing: f64 },

    #[error("Hermite order {order} exceeds the limit {limit}")]
    OrderTooLarge { order: usize, limit: usize },

    #[error("mode {mode} out of range 1..={modes}")]
    BadMode { mode: usize, modes: usize },

    #[error("not a valid state: minimum eigenvalue of the uncertainty matrix is {min_eigenvalue}")]
    InvalidState { min_eigenvalue: f64 },

    #[error("empty lambda grid")]
    EmptyLambdaGrid,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed covariance file: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
