use thiserror::Error;

/// Errors raised by the moment engines, the samplers and the CLI front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |A - A^H| = {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is numerically singular: pivot {pivot:.3e} below tolerance {tolerance:.3e}")]
    SingularMatrix { pivot: f64, tolerance: f64 },

    #[error("Jacobi eigen-iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix is not positive semidefinite: {0}")]
    NotPsd(String),

    #[error("degrees of freedom must be a positive integer for sampling, got {0}")]
    NonIntegerDegrees(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("enumeration budget exceeded for {what}: requested {requested}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("sequence has {available} orders but {needed} are required")]
    InsufficientOrders { needed: usize, available: usize },

    #[error("order-{order} polykay is undefined for a spectral sample of size {size}")]
    DegenerateSampleSize { order: usize, size: usize },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
}

/// Coarse error classes, used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Numerical,
    Budget,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::SingularMatrix { .. } | Error::NoConvergence { .. } | Error::NonFinite(_) => {
                ErrorClass::Numerical
            }
            Error::BudgetExceeded { .. } => ErrorClass::Budget,
            _ => ErrorClass::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
