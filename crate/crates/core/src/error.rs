use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series-backed map was asked for a value too close to the unit circle.
    #[error("evaluation point |z| = {modulus} exceeds the evaluation limit {limit}")]
    EvaluationDomain { modulus: f64, limit: f64 },

    #[error("singularity: {0}")]
    Singularity(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// `S(0) = |b1|` already exceeds the target `1 - beta`.
    #[error("no radius: S(0) = {s0} is not below the target {target}")]
    NoRadius { s0: f64, target: f64 },

    /// A class check was invoked on data that violates its hypotheses.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid coefficient data: {0}")]
    InvalidSequence(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
