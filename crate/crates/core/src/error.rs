use thiserror::Error;

/// Errors produced by the numerical kernel and the quantities built on it.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch in {context}: {left} vs {right}")]
    DimensionMismatch {
        context: &'static str,
        left: String,
        right: String,
    },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e}, tolerance {tolerance:.3e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("eigensolver failed to converge within {sweeps} sweeps (off-diagonal residual {residual:.3e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("scalar function produced a non-finite value at eigenvalue {eigenvalue}")]
    Domain { eigenvalue: f64 },

    #[error("state vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("invalid density matrix: {reason}")]
    InvalidState { reason: String },

    #[error("operation requires a non-interacting Hamiltonian")]
    InteractingHamiltonian,

    #[error("relative entropy is infinite: weight {weight:.3e} lies outside the support of the reference state")]
    SupportViolation { weight: f64 },

    #[error("invalid parameter: {reason}")]
    InvalidParameter { reason: String },

    #[error("invalid measurement basis: {reason}")]
    InvalidBasis { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dim_mismatch(
        context: &'static str,
        left: impl std::fmt::Display,
        right: impl std::fmt::Display,
    ) -> Self {
        Error::DimensionMismatch {
            context,
            left: left.to_string(),
            right: right.to_string(),
        }
    }
}
