use thiserror::Error;

/// Failures raised by the classification engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("basis change matrix is singular (|det| = {det:e})")]
    SingularMatrix { det: f64 },

    #[error("basis change matrix is ill-conditioned (condition number {cond:e} > {limit:e})")]
    IllConditioned { cond: f64, limit: f64 },

    #[error("subspace is not invariant under ad_x (residual {residual:e})")]
    NotInvariantSubspace { residual: f64 },

    #[error("subspace basis vectors are linearly dependent")]
    DependentBasis,

    #[error("metric on H does not have signature (-,+): eigenvalues {0:e}, {1:e}")]
    SignatureMismatch(f64, f64),

    #[error("distribution basis vectors are linearly dependent")]
    DegenerateDistribution,

    #[error("distribution is not contact: [X1,X2] lies in span{{X1,X2}}")]
    ContactViolation,

    #[error("Reeb vector system is singular")]
    ReebSolveFailure,

    #[error("trace constraint c1_13 + c2_23 = 0 violated (residual {residual:e})")]
    TraceConstraint { residual: f64 },

    #[error("Jacobi identity fails (defect {defect:e} > tolerance {tolerance:e})")]
    JacobiViolation { defect: f64, tolerance: f64 },

    #[error("{0} is not defined for this structure")]
    NotDefined(&'static str),

    #[error("bad class parameter: {0}")]
    BadParameter(String),

    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),

    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
