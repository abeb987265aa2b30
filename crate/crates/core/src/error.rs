use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is singular: min |eigenvalue| {min_abs:e} is below {threshold:e}")]
    Singular { min_abs: f64, threshold: f64 },

    #[error("matrix is not positive definite: smallest eigenvalue {0:e}")]
    NotPositiveDefinite(f64),

    /// The starting point already sits inside the target ball, so no positive
    /// step size exists.
    #[error("degenerate target: d = {d} does not exceed eps2 = {eps2}")]
    DegenerateTarget { d: f64, eps2: f64 },

    #[error("invalid error split: c must be > 1 (got {0})")]
    InvalidSplit(f64),

    #[error("invalid budget: {0}")]
    InvalidBudget(String),

    #[error("solver hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("gradient step {step} risks divergence (must be below {limit})")]
    DivergenceRisk { step: f64, limit: f64 },

    #[error("fixed point did not converge after {iterations} iterations (last change {last_change:e})")]
    NonConvergence { iterations: usize, last_change: f64 },

    #[error("unknown solver model `{0}`")]
    UnknownModel(String),

    #[error("model {0} has no improvement/overhead decomposition")]
    UnsupportedModel(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
