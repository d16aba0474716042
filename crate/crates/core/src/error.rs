use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GammaError {
    /// A point or interval lies outside the domain `(0, b)`.
    #[error("domain error: {0}")]
    Domain(String),

    /// A weight or step function violates its structural invariants.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The weight is trivial for the requested index (the space is `{0}` or `L1`).
    #[error("trivial weight: {0}")]
    TrivialWeight(String),

    /// A theorem-level hypothesis (e.g. divergent total mass) does not hold.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// An operation precondition, such as monotonicity of an argument, does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The requested parameter range is not covered by the formula.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Adaptive quadrature stopped before reaching the requested tolerance.
    #[error("quadrature did not converge (achieved relative change {achieved:e})")]
    Quadrature { achieved: f64 },

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl GammaError {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            GammaError::Quadrature { .. } => 3,
            GammaError::Io(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, GammaError>;
