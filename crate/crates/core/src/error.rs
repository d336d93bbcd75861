use thiserror::Error;

/// Errors raised by the cake model, tree construction and protocols.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("target {target} exceeds the measure {available} of the piece")]
    TargetExceedsMeasure { target: String, available: String },

    #[error("negative target {0}")]
    NegativeTarget(String),

    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid density: {0}")]
    InvalidDensity(String),

    #[error("invalid interval [{lo}, {hi})")]
    InvalidInterval { lo: String, hi: String },

    #[error("asked for {wanted} pieces but only {available} remain")]
    NotEnoughPieces { wanted: usize, available: usize },

    /// f(v) was not an integer. Signals a bug, never a property of the input.
    #[error("f({vertex}) is not integral")]
    NonIntegral { vertex: usize },

    #[error("expected {expected} densities, got {found}")]
    DensityCount { expected: usize, found: usize },

    #[error("slice count {0} does not fit in memory")]
    TooManySlices(String),

    #[error("invalid rational {0:?}")]
    BadRational(String),

    /// The exact moving-knife search found no crossing. Signals a bug.
    #[error("no agreeing window found (k = {k})")]
    NoCrossing { k: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
