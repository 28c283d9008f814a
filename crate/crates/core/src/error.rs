use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("weight {weight} does not belong to {group}")]
    WrongGroup { weight: String, group: &'static str },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("Clifford algebra with {0} generators exceeds the supported range 1..=10")]
    CliffordDimension(usize),

    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    EigenNoConvergence { sweeps: usize, off: f64 },

    #[error("quadrature did not converge: last two levels differ by {diff:e} (tol {tol:e})")]
    QuadratureNoConvergence { diff: f64, tol: f64 },

    #[error("quadrature integrand returned NaN at x = {0}")]
    QuadratureNan(f64),

    #[error("test function kind `{kind}` is not supported by {operation}")]
    UnsupportedKind {
        kind: &'static str,
        operation: &'static str,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numerical cross-check failed: {0}")]
    NumericalCheck(String),
}

impl Error {
    /// True for failures of a numerical method, as opposed to invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian(_)
                | Error::EigenNoConvergence { .. }
                | Error::QuadratureNoConvergence { .. }
                | Error::QuadratureNan(_)
                | Error::NumericalCheck(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidArgument {
        name,
        reason: reason.into(),
    }
}
