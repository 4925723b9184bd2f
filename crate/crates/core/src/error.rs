use thiserror::Error;

use crate::spaces::SpaceHandle;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point does not belong to space {space}: {reason}")]
    PointNotInSpace { space: SpaceHandle, reason: String },

    #[error("non-canonical point: {0}")]
    NonCanonical(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("interpolation parameter {0} outside [0,1]")]
    LambdaOutOfRange(String),

    #[error("dual norm supremum undefined: witnesses contain fewer than two distinct points")]
    UndefinedSup,

    #[error("operation needs a Euclidean space, got {0}")]
    NotEuclidean(SpaceHandle),

    #[error("grid of candidate points is empty")]
    EmptyGrid,

    #[error("set is not monotone: {0}")]
    NotMonotone(String),

    #[error("set is not contained in the ground set: {0}")]
    NotSubset(String),

    #[error("ground set has {size} elements, limit is {limit}")]
    LimitExceeded { size: usize, limit: usize },

    #[error("objective appears unbounded below: {0}")]
    UnboundedBelow(String),

    #[error("invalid objective: {0}")]
    InvalidObjective(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),
}
