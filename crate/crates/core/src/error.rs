use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("grading too aggressive: innermost radius {innermost:e} below positional tolerance {limit:e}")]
    GradingTooAggressive { innermost: f64, limit: f64 },

    #[error("mesh invariant violated: {0}")]
    InvariantViolation(String),

    #[error("quadrature node coincides with the origin")]
    QuadratureNodeAtOrigin,

    #[error("invalid quadrature rule: {0}")]
    InvalidRule(String),

    #[error("zero denominator in Rayleigh quotient")]
    ZeroDenominator,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("matrix is not symmetric positive definite")]
    NotSpd,

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    #[error("predicate never true on [{lo}, {hi}]")]
    PredicateNeverTrue { lo: f64, hi: f64 },

    #[error("operation requires a sector-type domain")]
    DomainNotSector,

    #[error("domain is not contained in a half-plane")]
    DomainNotHalfPlane,
}

impl Error {
    /// True for failures of an iterative or numerical procedure, as opposed to
    /// rejected inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::NotSpd
                | Error::ZeroDenominator
                | Error::QuadratureFailure(_)
                | Error::QuadratureNodeAtOrigin
        )
    }
}
