//! Error type shared across the library.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Unified error enum; variants map onto the CLI exit codes
/// (domain/regime -> 2, parse -> 3, non-convergence -> 4).
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian: max asymmetry {asymmetry:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { asymmetry: f64, tol: f64 },

    #[error("matrix is not a density matrix: {0}")]
    NotDensity(String),

    #[error("kernel condition violated: {0}")]
    Kernel(String),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("optimizer failed to converge: {0}")]
    NonConvergence(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
