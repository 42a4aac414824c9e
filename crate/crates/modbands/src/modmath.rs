//! Exact modular arithmetic on 63-bit naturals.
//!
//! Every product goes through a 128-bit intermediate, so all moduli below
//! 2^63 are handled without overflow. Primality is decided by a
//! deterministic Miller-Rabin witness set valid for the whole 64-bit range.

use num::integer::gcd;

use crate::error::{Error, Result};

/// Exclusive upper bound on supported moduli.
pub const MODULUS_LIMIT: u64 = 1 << 63;

/// A canonical residue paired with the modulus it lives under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Wraps `value` as a canonical residue, checking `0 <= value < modulus`.
    pub fn new(value: u64, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        if value >= modulus {
            return Err(Error::ResidueOutOfRange { value, modulus });
        }
        Ok(Residue { value, modulus })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl From<Residue> for u64 {
    fn from(r: Residue) -> u64 {
        r.value
    }
}

pub(crate) fn check_modulus(modulus: u64) -> Result<()> {
    if modulus < 2 {
        return Err(Error::ModulusTooSmall(modulus));
    }
    if modulus >= MODULUS_LIMIT {
        return Err(Error::ModulusTooLarge(modulus));
    }
    Ok(())
}

/// `a * b mod m` without overflow for any `m` that fits in a `u64`.
#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Square-and-multiply exponentiation; accepts any modulus `m >= 1`.
pub(crate) fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut cur = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, cur, m);
        }
        cur = mul_mod(cur, cur, m);
        exp >>= 1;
    }
    result
}

/// `base^exponent mod modulus` as a canonical residue.
pub fn mod_pow(base: u64, exponent: u64, modulus: u64) -> Result<Residue> {
    check_modulus(modulus)?;
    Ok(Residue {
        value: pow_mod(base, exponent, modulus),
        modulus,
    })
}

/// Multiplicative inverse of `a` modulo `modulus`, via the extended Euclidean
/// algorithm. Fails when `gcd(a, modulus) != 1`.
pub fn mod_inverse(a: u64, modulus: u64) -> Result<Residue> {
    check_modulus(modulus)?;
    let a0 = a % modulus;
    // Track Bezout coefficients for (a0, modulus); i128 is wide enough since
    // every intermediate stays below 2^63 in magnitude.
    let (mut r0, mut r1) = (a0 as i128, modulus as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible { value: a, modulus });
    }
    let m = modulus as i128;
    let inv = ((s0 % m) + m) % m;
    Ok(Residue {
        value: inv as u64,
        modulus,
    })
}

/// Distinct prime factors of `n`, by trial division.
fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while (d as u128) * (d as u128) <= n as u128 {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Euler's totient, by trial division. `euler_phi(0) == 0` by convention.
pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut phi = n;
    for p in distinct_prime_factors(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// Least `d >= 1` with `b^d = 1 (mod modulus)`.
///
/// The order divides the group order `phi(modulus)`, so it is found by
/// stripping prime factors from `phi(modulus)` while the power stays 1.
pub fn multiplicative_order(b: u64, modulus: u64) -> Result<u64> {
    check_modulus(modulus)?;
    let base = b % modulus;
    if gcd(base, modulus) != 1 {
        return Err(Error::NotCoprime { base: b, modulus });
    }
    let mut t = euler_phi(modulus);
    for f in distinct_prime_factors(t) {
        while t.is_multiple_of(f) && pow_mod(base, t / f, modulus) == 1 {
            t /= f;
        }
    }
    Ok(t)
}

/// The units modulo `n` in ascending order. `units(1)` is `{0}`, the
/// canonical representative of the trivial group.
pub fn units(n: u64) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&a| gcd(a, n) == 1).collect()
}

/// Deterministic primality test for any `u64`.
///
/// Trial division by the primes up to 37, then Miller-Rabin with the
/// seven-witness set that is exact for the full 64-bit range.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &SMALL {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    const WITNESSES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
