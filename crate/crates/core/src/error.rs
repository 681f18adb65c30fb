use thiserror::Error;

use crate::rings::RingDescriptor;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingDescriptor, RingDescriptor),

    #[error("operation not supported over {ring}: {what}")]
    Unsupported { ring: RingDescriptor, what: &'static str },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not divisible in the ring")]
    NotDivisible(String),

    #[error("singular parameter: {0}")]
    Singular(&'static str),

    #[error("rule not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("arithmetic overflow in fixed-width fast path")]
    Overflow,

    #[error("parse error: {0}")]
    Parse(String),

    /// A statement guaranteed by the theory failed on concrete input.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
