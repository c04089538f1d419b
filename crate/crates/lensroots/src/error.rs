use thiserror::Error;

/// Errors surfaced by the library. The CLI maps these onto exit codes.
#[derive(Debug, Error)]
pub enum Error {
    /// The zero polynomial has no degree profile and cannot be solved.
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,

    /// Every node produced an exactly zero resultant determinant, so the
    /// zero set contains a curve and roots are not isolated.
    #[error("non-isolated zero set: resultant vanishes identically")]
    NonIsolated,

    /// The simultaneous root iteration did not reach the error threshold.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// Newton refinement left the basin of the candidate.
    #[error("newton diverged from candidate at {0}")]
    Diverged(num_complex::Complex64),

    /// |J| fell below the singularity threshold during refinement.
    #[error("singular Jacobian near {0}")]
    SingularJacobian(num_complex::Complex64),

    /// A contour sample landed on (or numerically on) the zero set.
    #[error("zero on contour at {0}")]
    ZeroOnContour(num_complex::Complex64),

    /// Bad input: unreadable file, invalid JSON, duplicate terms,
    /// parameter outside its stated domain, unknown suite, and so on.
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(format!("invalid JSON: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
