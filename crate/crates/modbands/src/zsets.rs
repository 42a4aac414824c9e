//! Solution sets of the congruence `b^x = k*x + b (mod q)`.
//!
//! For an odd prime `q` with `gcd(b, q) = 1`, the units modulo `q(q-1)`
//! split into `q` disjoint sets `Z_0, ..., Z_{q-1}`, one per slope `k`.
//! Two independent routes compute them: a brute-force scan straight off the
//! defining congruence, and a structural construction that walks the unit
//! decomposition `x = alpha*q + beta*(q-1)` and solves for `beta` directly.

use num::integer::gcd;

use crate::decomp::compose_unchecked;
use crate::error::{Error, Result};
use crate::modmath::{
    euler_phi, is_prime, mod_inverse, mul_mod, multiplicative_order, pow_mod, units,
};

/// Whether the sequence values accumulate on every band `k/q` or only at 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dichotomy {
    /// `b^2 != 1 (mod q)`: every `Z_k` is populated.
    FullLadder,
    /// `b^2 = 1 (mod q)`: all solutions carry slope 0.
    ZeroOnly,
}

impl std::fmt::Display for Dichotomy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dichotomy::FullLadder => write!(f, "full-ladder"),
            Dichotomy::ZeroOnly => write!(f, "zero-only"),
        }
    }
}

/// How to build the solution sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Walk the unit decomposition and solve for `beta` per `alpha`.
    Structural,
    /// Test the defining congruence for every unit exponent.
    BruteForce,
}

/// Validated parameters `(b, q)` plus the derived quantities every
/// operation needs. Immutable once built, so freely shareable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModContext {
    b: u64,
    q: u64,
    delta: u64,
    n_set: Vec<u64>,
    phi_q_minus_1: u64,
}

impl ModContext {
    /// Validates `b >= 2`, `q` an odd prime not dividing `b`, and
    /// `q(q-1) < 2^63`, then caches the multiplicative order of `b` and the
    /// exponent residues that force slope 0.
    pub fn new(b: u64, q: u64) -> Result<Self> {
        if b < 2 {
            return Err(Error::BTooSmall(b));
        }
        if q == 2 {
            return Err(Error::QTooSmall);
        }
        if !is_prime(q) {
            return Err(Error::QNotPrime(q));
        }
        if b.is_multiple_of(q) {
            return Err(Error::QDividesB { b, q });
        }
        let modulus = (q as u128) * ((q - 1) as u128);
        if modulus >= (1u128 << 63) {
            return Err(Error::ModulusTooLarge(q));
        }
        let delta = multiplicative_order(b, q)?;
        // alpha values whose exponent residue is 1: these make b^x land on b
        // itself, so the only consistent slope is k = 0.
        let n_set: Vec<u64> = units(q - 1)
            .into_iter()
            .filter(|&a| a % delta == 1 % delta)
            .collect();
        let phi_q_minus_1 = euler_phi(q - 1);
        Ok(ModContext {
            b,
            q,
            delta,
            n_set,
            phi_q_minus_1,
        })
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Multiplicative order of `b` modulo `q`.
    pub fn delta(&self) -> u64 {
        self.delta
    }

    /// The `alpha` values (units modulo `q - 1`) that force slope 0.
    pub fn n_set(&self) -> &[u64] {
        &self.n_set
    }

    /// Number of slope-0 `alpha` values.
    pub fn m_b(&self) -> u64 {
        self.n_set.len() as u64
    }

    pub fn phi_q_minus_1(&self) -> u64 {
        self.phi_q_minus_1
    }

    /// The exponent modulus `q(q-1)`.
    pub fn exponent_modulus(&self) -> u64 {
        self.q * (self.q - 1)
    }

    /// Same verdict as the standalone [`dichotomy`], read off the cached
    /// order: `b^2 = 1` exactly when the order is 1 or 2.
    pub fn dichotomy(&self) -> Dichotomy {
        if self.delta <= 2 {
            Dichotomy::ZeroOnly
        } else {
            Dichotomy::FullLadder
        }
    }

    fn check_k(&self, k: u64, min: u64) -> Result<()> {
        if k < min || k >= self.q {
            return Err(Error::KOutOfRange { k, min, q: self.q });
        }
        Ok(())
    }

    /// `Z_k` by scanning every unit exponent against the defining
    /// congruence. Slow but assumption-free; the reference route.
    pub fn zk_bruteforce(&self, k: u64) -> Result<Vec<u64>> {
        self.check_k(k, 0)?;
        Ok(self.bruteforce_set(k))
    }

    fn bruteforce_set(&self, k: u64) -> Vec<u64> {
        let m = self.exponent_modulus();
        let b = self.b % self.q;
        (1..m)
            .filter(|&x| gcd(x, m) == 1)
            .filter(|&x| pow_mod(b, x, self.q) == (mul_mod(k, x, self.q) + b) % self.q)
            .collect()
    }

    /// `Z_k` by the structural construction: ascending, no scanning.
    pub fn zk_structural(&self, k: u64) -> Result<Vec<u64>> {
        self.check_k(k, 0)?;
        Ok(self.structural_set(k))
    }

    fn structural_set(&self, k: u64) -> Vec<u64> {
        let q = self.q;
        let mut out = if k == 0 {
            let mut v = Vec::with_capacity((self.m_b() * (q - 1)) as usize);
            for &alpha in &self.n_set {
                for beta in 1..q {
                    v.push(compose_unchecked(q, alpha, beta));
                }
            }
            v
        } else {
            let mut v = Vec::with_capacity((self.phi_q_minus_1 - self.m_b()) as usize);
            for alpha in units(q - 1) {
                if alpha % self.delta == 1 % self.delta {
                    continue;
                }
                let beta = self.beta_for(k, alpha);
                v.push(compose_unchecked(q, alpha, beta));
            }
            v
        };
        out.sort_unstable();
        out
    }

    /// Solves `k*beta = b - b^(alpha mod delta) (mod q)` for `beta`,
    /// assuming `k` and `alpha` were already validated.
    fn beta_for(&self, k: u64, alpha: u64) -> u64 {
        let q = self.q;
        let b = self.b % q;
        let rhs = pow_mod(b, alpha % self.delta, q);
        let diff = (b + q - rhs) % q;
        let k_inv = mod_inverse(k, q)
            .expect("k in 1..q is invertible modulo a prime")
            .value();
        mul_mod(k_inv, diff, q)
    }

    /// The `beta` that pairs with `alpha` inside `Z_k`, for `k >= 1`.
    ///
    /// Fails when `alpha` is not a unit modulo `q - 1` or when it forces
    /// slope 0 (no unit `beta` satisfies the band equation there).
    pub fn beta_k(&self, k: u64, alpha: u64) -> Result<u64> {
        self.check_k(k, 1)?;
        if alpha == 0 || alpha >= self.q - 1 || gcd(alpha, self.q - 1) != 1 {
            return Err(Error::NotAUnit {
                value: alpha,
                modulus: self.q - 1,
            });
        }
        if alpha % self.delta == 1 % self.delta {
            return Err(Error::AlphaInZeroBand(alpha));
        }
        Ok(self.beta_for(k, alpha))
    }

    /// The slope of the unique solution set containing the unit `x`:
    /// `k = (b^x - b) * x^(-1) (mod q)`.
    pub fn classify(&self, x: u64) -> Result<u64> {
        let m = self.exponent_modulus();
        if x == 0 || x >= m {
            return Err(Error::ResidueOutOfRange {
                value: x,
                modulus: m,
            });
        }
        if gcd(x, m) != 1 {
            return Err(Error::NotAUnit {
                value: x,
                modulus: m,
            });
        }
        let q = self.q;
        let b = self.b % q;
        let bx = pow_mod(b, x, q);
        let diff = (bx + q - b) % q;
        let x_inv = mod_inverse(x % q, q)
            .expect("x coprime to q is invertible")
            .value();
        Ok(mul_mod(diff, x_inv, q))
    }

    /// `(|Z_0|, |Z_k| for k >= 1)` from the cached counts alone.
    pub fn counts(&self) -> (u64, u64) {
        ((self.q - 1) * self.m_b(), self.phi_q_minus_1 - self.m_b())
    }

    /// All `q` solution sets at once.
    ///
    /// The brute-force route shares one exponentiation per unit across all
    /// slopes; per-set scans stay available through [`Self::zk_bruteforce`].
    pub fn all_sets(&self, method: Method) -> SolutionSets {
        let q = self.q;
        let sets = match method {
            Method::Structural => (0..q).map(|k| self.structural_set(k)).collect(),
            Method::BruteForce => {
                let m = self.exponent_modulus();
                let b = self.b % q;
                let mut sets: Vec<Vec<u64>> = vec![Vec::new(); q as usize];
                for x in (1..m).filter(|&x| gcd(x, m) == 1) {
                    let lhs = pow_mod(b, x, q);
                    for k in 0..q {
                        if (mul_mod(k, x, q) + b) % q == lhs {
                            sets[k as usize].push(x);
                            break;
                        }
                    }
                }
                sets
            }
        };
        SolutionSets {
            context: self.clone(),
            sets,
        }
    }
}

/// The full family `Z_0, ..., Z_{q-1}` for one context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSets {
    context: ModContext,
    sets: Vec<Vec<u64>>,
}

impl SolutionSets {
    pub fn context(&self) -> &ModContext {
        &self.context
    }

    pub fn sets(&self) -> &[Vec<u64>] {
        &self.sets
    }

    /// Elements of `Z_k`, ascending.
    pub fn set(&self, k: u64) -> &[u64] {
        &self.sets[k as usize]
    }
}

/// Standalone dichotomy check: `ZeroOnly` exactly when `b^2 = 1 (mod q)`.
pub fn dichotomy(b: u64, q: u64) -> Result<Dichotomy> {
    if b < 2 {
        return Err(Error::BTooSmall(b));
    }
    if q == 2 {
        return Err(Error::QTooSmall);
    }
    if !is_prime(q) {
        return Err(Error::QNotPrime(q));
    }
    if b.is_multiple_of(q) {
        return Err(Error::QDividesB { b, q });
    }
    let r = b % q;
    if mul_mod(r, r, q) == 1 {
        Ok(Dichotomy::ZeroOnly)
    } else {
        Ok(Dichotomy::FullLadder)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(b: u64, q: u64) -> ModContext {
        ModContext::new(b, q).unwrap()
    }

    #[test]
    fn context_examples() {
        let c = ctx(2, 13);
        assert_eq!(c.delta(), 12);
        assert_eq!(c.n_set(), &[1]);
        assert_eq!(c.m_b(), 1);
        assert_eq!(c.phi_q_minus_1(), 4);
        assert_eq!(c.exponent_modulus(), 156);

        let c = ctx(6, 7);
        assert_eq!(c.delta(), 2);
        assert_eq!(c.n_set(), &[1, 5]);
        assert_eq!(c.m_b(), 2);

        let c = ctx(2, 5);
        assert_eq!(c.delta(), 4);
        assert_eq!(c.n_set(), &[1]);
    }

    #[test]
    fn context_validation() {
        assert_eq!(ModContext::new(1, 13), Err(Error::BTooSmall(1)));
        assert_eq!(ModContext::new(2, 2), Err(Error::QTooSmall));
        assert_eq!(ModContext::new(2, 9), Err(Error::QNotPrime(9)));
        assert_eq!(ModContext::new(2, 0), Err(Error::QNotPrime(0)));
        assert_eq!(
            ModContext::new(26, 13),
            Err(Error::QDividesB { b: 26, q: 13 })
        );
    }

    #[test]
    fn order_one_base_folds_into_slope_zero() {
        // b = 1 (mod q) gives delta = 1; every alpha forces slope 0 and the
        // zero set is the whole unit group.
        let c = ctx(8, 7);
        assert_eq!(c.delta(), 1);
        assert_eq!(c.n_set(), units(6).as_slice());
        assert_eq!(c.dichotomy(), Dichotomy::ZeroOnly);
        assert_eq!(c.zk_structural(0).unwrap(), units(42));
        for k in 1..7 {
            assert!(c.zk_structural(k).unwrap().is_empty());
        }
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(ctx(2, 13).zk_bruteforce(8).unwrap(), vec![19, 137, 155]);
        assert_eq!(
            ctx(2, 13).zk_bruteforce(0).unwrap(),
            vec![1, 25, 37, 49, 61, 73, 85, 97, 109, 121, 133, 145]
        );
        assert_eq!(ctx(2, 5).zk_bruteforce(2).unwrap(), vec![3]);
    }

    #[test]
    fn structural_examples() {
        assert_eq!(ctx(2, 13).zk_structural(8).unwrap(), vec![19, 137, 155]);
        assert_eq!(ctx(2, 5).zk_structural(0).unwrap(), vec![1, 9, 13, 17]);
        assert!(ctx(6, 7).zk_structural(3).unwrap().is_empty());
    }

    #[test]
    fn beta_examples() {
        let c = ctx(2, 13);
        assert_eq!(c.beta_k(8, 5).unwrap(), 6);
        assert_eq!(c.beta_k(8, 7).unwrap(), 7);
        assert_eq!(c.beta_k(8, 11).unwrap(), 1);
        assert_eq!(c.beta_k(8, 1), Err(Error::AlphaInZeroBand(1)));
        assert_eq!(
            c.beta_k(8, 2),
            Err(Error::NotAUnit {
                value: 2,
                modulus: 12
            })
        );
        assert_eq!(
            c.beta_k(0, 5),
            Err(Error::KOutOfRange {
                k: 0,
                min: 1,
                q: 13
            })
        );
        assert_eq!(
            c.beta_k(13, 5),
            Err(Error::KOutOfRange {
                k: 13,
                min: 1,
                q: 13
            })
        );
    }

    #[test]
    fn classify_examples() {
        let c = ctx(2, 13);
        assert_eq!(c.classify(19).unwrap(), 8);
        assert_eq!(c.classify(1).unwrap(), 0);
        assert_eq!(ctx(2, 5).classify(7).unwrap(), 3);
        assert_eq!(
            c.classify(2),
            Err(Error::NotAUnit {
                value: 2,
                modulus: 156
            })
        );
        assert_eq!(
            c.classify(156),
            Err(Error::ResidueOutOfRange {
                value: 156,
                modulus: 156
            })
        );
    }

    #[test]
    fn count_examples() {
        assert_eq!(ctx(2, 13).counts(), (12, 3));
        assert_eq!(ctx(6, 7).counts(), (12, 0));
        assert_eq!(ctx(2, 5).counts(), (4, 1));
    }

    #[test]
    fn dichotomy_examples() {
        assert_eq!(dichotomy(6, 7).unwrap(), Dichotomy::ZeroOnly);
        assert_eq!(dichotomy(2, 13).unwrap(), Dichotomy::FullLadder);
        assert_eq!(dichotomy(4, 5).unwrap(), Dichotomy::ZeroOnly);
        assert_eq!(dichotomy(6, 3), Err(Error::QDividesB { b: 6, q: 3 }));
        assert_eq!(dichotomy(2, 2), Err(Error::QTooSmall));
    }

    #[test]
    fn all_sets_small_example() {
        let c = ctx(2, 5);
        let expected: Vec<Vec<u64>> =
            vec![vec![1, 9, 13, 17], vec![11], vec![3], vec![7], vec![19]];
        for method in [Method::Structural, Method::BruteForce] {
            let sets = c.all_sets(method);
            assert_eq!(sets.sets(), expected.as_slice());
        }
    }

    #[test]
    fn trivial_witness_always_lands_in_zero_set() {
        // x = 2q - 1 composes from alpha = beta = 1, so it sits in Z_0.
        for q in [3u64, 5, 7, 13, 31, 61] {
            for b in [2u64, 3, 5, 10] {
                if b % q == 0 {
                    continue;
                }
                let c = ctx(b, q);
                assert!(c.zk_structural(0).unwrap().contains(&(2 * q - 1)));
                assert_eq!(c.classify(2 * q - 1).unwrap(), 0);
            }
        }
    }

    /// A slow reference sweep shared by several invariants; the full-size
    /// version lives in the acceptance suite.
    #[test]
    fn sweep_small_contexts() {
        let bases = [2u64, 3, 5, 6, 7, 10, 11];
        for q in (3u64..=60).filter(|&q| is_prime(q)) {
            for b in bases {
                if b % q == 0 {
                    continue;
                }
                let c = ctx(b, q);
                let structural = c.all_sets(Method::Structural);
                let brute = c.all_sets(Method::BruteForce);
                assert_eq!(
                    structural.sets(),
                    brute.sets(),
                    "methods disagree for b = {b}, q = {q}"
                );

                // Disjoint cover of the units, with the advertised sizes.
                let (z0, zk) = c.counts();
                let mut all: Vec<u64> = Vec::new();
                for (k, set) in structural.sets().iter().enumerate() {
                    let expected = if k == 0 { z0 } else { zk };
                    assert_eq!(set.len() as u64, expected, "b = {b}, q = {q}, k = {k}");
                    for &x in set {
                        assert_eq!(c.classify(x).unwrap(), k as u64);
                    }
                    all.extend_from_slice(set);
                }
                all.sort_unstable();
                assert_eq!(all, units(c.exponent_modulus()), "b = {b}, q = {q}");

                // The dichotomy mirrors whether any k >= 1 set is populated.
                let any_nonzero = structural.sets()[1..].iter().any(|s| !s.is_empty());
                match c.dichotomy() {
                    Dichotomy::ZeroOnly => assert!(!any_nonzero),
                    Dichotomy::FullLadder => {
                        assert!(any_nonzero);
                        if q > b * b {
                            // Far enough out, every set is populated.
                            assert!(structural.sets().iter().all(|s| !s.is_empty()));
                        }
                    }
                }
                assert_eq!(c.dichotomy(), dichotomy(b, q).unwrap());
            }
        }
    }
}
