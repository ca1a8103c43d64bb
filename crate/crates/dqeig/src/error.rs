use thiserror::Error;

/// Errors surfaced by the scalar algebra, dense kernels, solvers and oracle.
#[derive(Error, Debug)]
pub enum DqError {
    #[error("zero quaternion has no inverse")]
    ZeroQuaternion,

    #[error("dual quaternion is not appreciable (standard part vanishes)")]
    NotAppreciable,

    #[error("dual number division undefined for this divisor")]
    DegenerateDivision,

    #[error("class representative undefined under this formula (zero standard vector part with nonzero dual vector part)")]
    ClassRepUndefined,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("matrix is numerically singular (pivot below threshold)")]
    SingularMatrix,

    #[error("power iteration broke down: iterate standard part vanished")]
    Breakdown,

    #[error("QR iteration failed to converge within the sweep budget")]
    QrNoConvergence,

    #[error("adjoint spectrum failed conjugate pairing beyond tolerance")]
    ConjugatePairing,

    #[error("degenerate spectrum: dominant standard eigenvalue is zero")]
    DegenerateSpectrum,

    #[error("too few qualifying residual samples to estimate a rate")]
    UndefinedRate,

    #[error("failed to generate a well-conditioned transform after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, DqError>;
