use crate::field::FieldTag;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldTag, FieldTag),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid ladder: {0}")]
    InvalidLadder(String),
    #[error("the empty ladder has no partition")]
    EmptyLadder,
    #[error("index set is not a ladder shape: {0}")]
    NotALadderShape(String),
    #[error("span is not closed under the bracket")]
    NotBracketClosed,
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("derivation is not a sum of an inner part and a trace-driven part")]
    NotInDecomposition,
    #[error("no adjoint witness in the block upper triangular algebra")]
    NoAdjointWitness,
    #[error("map does not stabilize the core subalgebra")]
    StabilityViolation,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
