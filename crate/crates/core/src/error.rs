use thiserror::Error;

/// Errors produced by matrix, channel, family, and sampling operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max asymmetry {deviation:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error(
        "Kraus operators do not resolve the identity: max deviation {deviation:.3e} \
         exceeds tolerance {tol:.3e}"
    )]
    NotTracePreserving { deviation: f64, tol: f64 },

    #[error("not a density matrix: {context}")]
    NotAState { context: String },

    #[error("matrix is not unitary: max deviation {deviation:.3e}")]
    NotUnitary { deviation: f64 },

    #[error("invalid L matrix: {context}")]
    InvalidL { context: String },

    #[error("invalid parameter: {context}")]
    InvalidParameter { context: String },

    #[error("unknown name {name:?} (expected one of {expected})")]
    UnknownName { name: String, expected: String },

    #[error("unsupported: {context}")]
    Unsupported { context: String },

    #[error("numerical failure: {context}")]
    Numerical { context: String },
}

pub type Result<T> = std::result::Result<T, Error>;
