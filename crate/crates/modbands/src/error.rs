//! Error type shared by every module in the crate.

use thiserror::Error;

/// Convenience alias used throughout the library.
pub type Result<T> = std::result::Result<T, Error>;

/// Unified error type for all library operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("modulus {0} is too large: moduli must stay below 2^63")]
    ModulusTooLarge(u64),
    #[error("modulus {0} is too small: moduli must be at least 2")]
    ModulusTooSmall(u64),
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },
    #[error("{base} shares a factor with the modulus {modulus}")]
    NotCoprime { base: u64, modulus: u64 },
    #[error("invalid unit decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },
    #[error("{value} is not a canonical residue modulo {modulus} (want 0 < value < modulus)")]
    ResidueOutOfRange { value: u64, modulus: u64 },
    #[error("q = {q} divides b = {b}, so the congruence degenerates")]
    QDividesB { b: u64, q: u64 },
    #[error("q must be an odd prime; q = 2 is not supported")]
    QTooSmall,
    #[error("q must be an odd prime; {0} is not prime")]
    QNotPrime(u64),
    #[error("b must be at least 2, got {0}")]
    BTooSmall(u64),
    #[error("k = {k} is out of range: want {min} <= k < {q}")]
    KOutOfRange { k: u64, min: u64, q: u64 },
    #[error(
        "alpha = {0} reduces to exponent residue 1, so the band equation has no unit solution"
    )]
    AlphaInZeroBand(u64),
    #[error("invalid progression {residue} mod {modulus}: {reason}")]
    InvalidProgression {
        residue: u64,
        modulus: u64,
        reason: &'static str,
    },
    #[error("{0}")]
    RangeExceeded(String),
    #[error("prime search exhausted its budget of {budget} candidates")]
    SearchBudgetExhausted { budget: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degenerate interval: the lower endpoint must lie strictly below the upper")]
    DegenerateInterval,
    #[error("tolerance must be a positive finite number, got {0}")]
    InvalidTolerance(f64),
}
