use thiserror::Error;

use crate::algebra::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid signature: q = {q}, n = {n} (need n >= 1 and 2q <= n)")]
    InvalidSignature { q: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("gram matrix is not symmetric")]
    NonSymmetricGram,

    #[error("gram matrix is degenerate")]
    DegenerateGram,

    #[error("matrix is not skew-symmetric with respect to the inner product")]
    NotSkew,

    #[error("operands live in different spaces")]
    SpaceMismatch,

    #[error("matrix is singular")]
    Singular,

    #[error("operation needs a pseudo-Euclidean (canonical) basis")]
    NonCanonicalBasis,

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("metric is not Euclidean")]
    NotEuclidean,

    #[error("Sym^-(V) is trivial for n < 2")]
    TrivialSymMinus,

    #[error("invalid algebra: {}", list(.0))]
    InvalidAlgebra(Vec<Violation>),

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("{what} disagree: max deviation {deviation:e} exceeds tolerance {tolerance:e}")]
    Inconsistent { what: &'static str, deviation: f64, tolerance: f64 },

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn list(violations: &[Violation]) -> String {
    violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

impl Error {
    pub fn constraint(msg: impl Into<String>) -> Self {
        Error::Constraint(msg.into())
    }
}
