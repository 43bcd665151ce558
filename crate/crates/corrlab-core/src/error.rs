use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The system matrix has spectrum touching or crossing the imaginary axis,
    /// so the propagator does not decay and no stationary state exists.
    #[error("attenuation violation: min Re(spectrum) = {min_real:.6e} must be > 0")]
    AttenuationViolation { min_real: f64 },

    /// The eigenvector basis is too ill-conditioned to trust (defective or
    /// near-defective matrix); the eigenbasis solve path would silently lose
    /// precision, so the matrix is rejected instead.
    #[error("defective system: eigenvector condition number {cond:.3e} exceeds 1e8")]
    DefectiveSystem { cond: f64 },

    /// A stationary-covariance solve hit a resonant eigenvalue pair
    /// (mu_j + conj(mu_k) ~ 0), which contradicts the attenuation margin.
    #[error("resonant eigenvalue pair: |mu_j + conj(mu_k)| = {value:.3e} < 1e-12")]
    Resonance { value: f64 },

    /// Phase-space grids of two objects do not describe the same discretization.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A time-integral upper limit would overflow the growing semigroup.
    #[error("range error: {0}")]
    RangeError(String),

    /// A file or string did not parse as the documented format.
    #[error("format error: {0}")]
    FormatError(String),

    /// A dense linear-algebra routine failed to converge or returned NaN.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Shorthand constructor for precondition violations.
pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
