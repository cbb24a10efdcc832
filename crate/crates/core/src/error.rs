use thiserror::Error;

/// Errors raised by table construction, solvers and checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },

    #[error("truncation degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid element {0}")]
    InvalidElement(String),

    #[error("the identity element has no immediate predecessors")]
    IdentityHasNoPredecessors,

    #[error("table is not unital: value at the identity is {0}")]
    NotUnital(String),

    #[error("coefficient at {at} must be strictly positive, found {value}")]
    NonPositive { at: String, value: String },

    #[error("ratio table is inadmissible at {at}: {reason}")]
    InvalidRatio { at: String, reason: String },

    #[error("b table must vanish at the identity, found {0}")]
    NonzeroAtIdentity(String),

    #[error("word table of dimension {dim} and degree {degree} exceeds the guard of {limit} entries per level")]
    GuardExceeded { dim: usize, degree: usize, limit: u64 },

    #[error("evaluation point has l1 norm {0}, must be < 1")]
    OutsideBall(String),

    #[error("sequence has {found} terms, need at least {needed}")]
    LengthShortfall { needed: usize, found: usize },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("missing entry for {0}")]
    MissingIndex(String),

    #[error("duplicate entry for {0}")]
    DuplicateIndex(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
