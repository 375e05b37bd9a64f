use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("point {point:?} lies outside chart domain `{domain}`")]
    Domain { point: [f64; 4], domain: String },

    #[error("metric is degenerate at {point:?}: smallest eigenvalue {min_eigenvalue:e}")]
    DegenerateMetric { point: [f64; 4], min_eigenvalue: f64 },

    #[error("first Bianchi residual {residual:e} exceeds 100x the finite-difference error estimate {estimate:e}")]
    NumericalInstability { residual: f64, estimate: f64 },

    #[error("curvature data and bivector basis were built from different frames")]
    FrameMismatch,

    #[error("trace violation: |trace| = {trace:e} exceeds tolerance {tolerance:e}")]
    TraceViolation { trace: f64, tolerance: f64 },

    #[error("Jacobi iteration did not converge: off-diagonal norm {off_norm:e} after {sweeps} sweeps")]
    Convergence { off_norm: f64, sweeps: usize },

    #[error("distinguished eigenvalue is not isolated (gap {gap:e} < {required:e})")]
    DegenerateEigenvector { gap: f64, required: f64 },

    #[error("grid of {requested} points exceeds the budget of {budget}")]
    BudgetExceeded { requested: usize, budget: usize },

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("invalid chart domain: {0}")]
    InvalidDomain(String),

    #[error("invalid sweep configuration: {0}")]
    InvalidSweep(String),

    #[error("catalog self-test failed for `{entry}`: {detail}")]
    SelfTest { entry: String, detail: String },
}
