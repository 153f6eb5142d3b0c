use thiserror::Error;

use crate::constructor::FeasibilityVerdict;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("the number of coordinates must be positive")]
    ZeroDimension,

    #[error("group order {p}^{k} does not fit in 64 bits")]
    OrderOverflow { p: u32, k: u32 },

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("the zero element does not generate a cyclic subgroup of order p")]
    InvalidGenerator,

    #[error("the given set is not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),

    #[error("partition does not match shape: {0}")]
    PartitionShapeMismatch(String),

    #[error("malformed labeling: {0}")]
    MalformedLabeling(String),

    #[error("partition is not in the model [{a}, 0, {b}]")]
    ModelMismatch { a: String, b: String },

    #[error("matrix is singular mod {0}")]
    SingularMatrix(u32),

    #[error("pattern hypothesis violated: {0}")]
    PatternHypothesis(String),

    #[error("shape is infeasible: {}", .0.detail)]
    Infeasible(FeasibilityVerdict),

    #[error("no construction found: {0}")]
    ConstructionFailed(String),

    #[error("inconsistent seed: {0}")]
    InconsistentSeed(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
