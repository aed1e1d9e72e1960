//! Crate-wide error type.

use thiserror::Error;

/// Domain errors surfaced by library operations.
///
/// Internal invariant violations (bugs) panic instead; these variants are
/// contract violations an API caller can trigger.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("order {order} does not divide target order {target}")]
    OrderDoesNotDivide { order: u64, target: u64 },

    #[error("modulus {modulus} does not divide target modulus {target}")]
    ModulusDoesNotDivide { modulus: u64, target: u64 },

    #[error("{0} is not a prime dividing the modulus")]
    NotAPrimeDivisor(u64),

    #[error("character of modulus {0} is not primitive")]
    NotPrimitive(u64),

    #[error("mixed weights: {0} vs {1}")]
    MixedWeights(i64, i64),

    #[error("operation requires width 1, got {0}")]
    NonUnitWidth(u64),

    #[error("parity mismatch: phi*psi(-1) != (-1)^l for l = {0}")]
    ParityMismatch(i64),

    #[error("excluded Eisenstein label (trivial, trivial, {0})")]
    ExcludedLabel(i64),

    #[error("weight must be even, got {0}")]
    OddWeight(i64),

    #[error("weight must be >= 1, got {0}")]
    InvalidWeight(i64),

    #[error("precision {got} below required {needed}")]
    InsufficientPrecision { got: usize, needed: usize },

    #[error("representation is not verified to the requested precision")]
    UnverifiedRepresentation,

    #[error("expansions are not proportional: not an eigenform at S")]
    NotAnEigenform,

    #[error("computed expansion is not periodic with the designated width {width}")]
    WidthMismatch { width: u64 },

    #[error("linear solve did not stabilize after {0} primes")]
    SolveDidNotStabilize(usize),

    #[error("invalid character reference {0:?}")]
    BadCharRef(String),

    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
