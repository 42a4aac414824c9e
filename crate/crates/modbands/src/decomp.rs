//! The unit-group splitting behind the solution-set structure.
//!
//! For `n >= 3` every unit `x` modulo `n(n-1)` factors uniquely as
//! `x = alpha*n + beta*(n-1) (mod n(n-1))` with `alpha` a unit modulo
//! `n - 1` and `beta` a unit modulo `n`. `compose` and `decompose` are the
//! two directions of that bijection.

use num::integer::gcd;

use crate::error::{Error, Result};
use crate::modmath::MODULUS_LIMIT;

/// A pair `(alpha, beta)` of units representing one unit modulo `n(n-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitDecomposition {
    n: u64,
    alpha: u64,
    beta: u64,
}

impl UnitDecomposition {
    /// Validates `n >= 3`, `alpha` a unit modulo `n - 1`, and `beta` a unit
    /// modulo `n`.
    pub fn new(n: u64, alpha: u64, beta: u64) -> Result<Self> {
        check_n(n)?;
        if alpha == 0 || alpha >= n - 1 || gcd(alpha, n - 1) != 1 {
            return Err(Error::InvalidDecomposition(format!(
                "alpha = {alpha} is not a unit modulo {}",
                n - 1
            )));
        }
        if beta == 0 || beta >= n || gcd(beta, n) != 1 {
            return Err(Error::InvalidDecomposition(format!(
                "beta = {beta} is not a unit modulo {n}"
            )));
        }
        Ok(UnitDecomposition { n, alpha, beta })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }
}

/// `n` must be at least 3 and small enough that `n(n-1)` stays below 2^63.
fn check_n(n: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::InvalidDecomposition(format!(
            "n must be at least 3, got {n}"
        )));
    }
    let modulus = (n as u128) * ((n - 1) as u128);
    if modulus >= MODULUS_LIMIT as u128 {
        return Err(Error::ModulusTooLarge(n));
    }
    Ok(modulus as u64)
}

/// `alpha*n + beta*(n-1) mod n(n-1)` without validity checks; callers must
/// guarantee the unit constraints.
pub(crate) fn compose_unchecked(n: u64, alpha: u64, beta: u64) -> u64 {
    let modulus = (n as u128) * ((n - 1) as u128);
    let sum = (alpha as u128) * (n as u128) + (beta as u128) * ((n - 1) as u128);
    (sum % modulus) as u64
}

/// The unit modulo `n(n-1)` represented by `d`.
pub fn compose(d: &UnitDecomposition) -> u64 {
    compose_unchecked(d.n, d.alpha, d.beta)
}

/// Splits a canonical unit `x` modulo `n(n-1)` back into `(alpha, beta)`.
///
/// `beta` is recovered as `n - (x mod n)`; then `x + beta` is divisible by
/// `n` and `alpha = (x + beta)/n - beta (mod n-1)`.
pub fn decompose(x: u64, n: u64) -> Result<UnitDecomposition> {
    let modulus = check_n(n)?;
    if x == 0 || x >= modulus {
        return Err(Error::ResidueOutOfRange { value: x, modulus });
    }
    if gcd(x, modulus) != 1 {
        return Err(Error::NotAUnit { value: x, modulus });
    }
    let beta = n - (x % n);
    // x < n(n-1) and beta <= n - 1, so x + beta < n^2 <= 2^63 + small: safe in u64
    // because n(n-1) < 2^63 bounds n by ~3e9.
    let quot = (x + beta) / n;
    let alpha = (quot % (n - 1) + (n - 1) - beta % (n - 1)) % (n - 1);
    debug_assert!(alpha != 0 && gcd(alpha, n - 1) == 1);
    debug_assert!(gcd(beta, n) == 1);
    Ok(UnitDecomposition { n, alpha, beta })
}
