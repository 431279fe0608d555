use thiserror::Error;

use crate::exactfield::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole")]
    Pole,
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(Symbol),
    #[error("non-expandable: denominator vanishes at the expansion point")]
    NonExpandable,
    #[error("not invertible at this order")]
    NotInvertible,
    #[error("beyond truncation: mode {0} is not stored")]
    BeyondTruncation(i64),
    #[error("direction mismatch between series")]
    DirectionMismatch,
    #[error("inhomogeneous entry")]
    InhomogeneousEntry,
    #[error("inhomogeneous")]
    Inhomogeneous,
    #[error("sign pair (-,+) is not one of the defining sign pairs")]
    UndefinedSignPair,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("convention search failed: no candidate twist satisfies the RTT relation")]
    ConventionSearchFailed,
    #[error("non-generic evaluation points: {0}")]
    NonGeneric(String),
    #[error("unknown relation id `{0}`")]
    UnknownRelation(String),
    #[error("window exceeded: {0}")]
    WindowExceeded(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
