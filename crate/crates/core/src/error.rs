use thiserror::Error;

use crate::symbolic::BTriple;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid scheme parameters: {0}")]
    InvalidParams(String),

    #[error("relation index {index} out of range [0, {max}]")]
    IndexOutOfRange { index: u64, max: u64 },

    #[error("{0} is neither 0 nor a prime")]
    NotPrime(u64),

    #[error("division by zero in the coefficient field")]
    DivisionByZero,

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("empty relation set")]
    EmptyInput,

    #[error("relation set {0:?} is not closed")]
    NotClosed(Vec<u32>),

    #[error("{0} is not a basis triple (its intersection number vanishes)")]
    InvalidTriple(BTriple),

    #[error("D-element {triple} undefined: characteristic divides the valency of {middle}")]
    UndefinedDElement { triple: BTriple, middle: u32 },

    #[error("C-element index {0} is not below the tilde of the top relation")]
    InvalidCenterIndex(u32),

    #[error("scheme has {points} points, above the oracle cap of {cap}")]
    SizeCap { points: u64, cap: u64 },

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("span is not nilpotent")]
    NotNilpotent,

    #[error("closed-form product rule violated: {0}")]
    RuleViolation(String),
}
