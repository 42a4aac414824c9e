//! Prime generation: dense runs by segmented sieve, sparse runs by stepping
//! an arithmetic progression under the deterministic primality test.

use num::{BigUint, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modmath::is_prime;

/// Default cap on candidates examined by a progression search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 100_000_000;

/// Dense prime output must stay below 2^32.
const DENSE_LIMIT: u64 = 1 << 32;

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r > 0 && (r as u128) * (r as u128) > n as u128 {
        r -= 1;
    }
    while ((r + 1) as u128) * ((r + 1) as u128) <= n as u128 {
        r += 1;
    }
    r
}

/// Plain sieve of Eratosthenes; used for the base primes of the segmented
/// sieve, where `limit` is at most 2^16.
fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            for j in (i * i..=n).step_by(i) {
                composite[j] = true;
            }
        }
    }
    primes
}

/// All primes `<= limit`, ascending, via a segmented sieve.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let root = isqrt(limit);
    let base = simple_sieve(root);
    let mut primes = base.clone();

    const SEGMENT: u64 = 1 << 20;
    let mut mark = vec![false; SEGMENT as usize];
    let mut low = root + 1;
    while low <= limit {
        let high = limit.min(low + SEGMENT - 1);
        let len = (high - low + 1) as usize;
        mark[..len].fill(false);
        for &p in &base {
            let mut j = low.div_ceil(p) * p;
            if j < p * p {
                j = p * p;
            }
            while j <= high {
                mark[(j - low) as usize] = true;
                j += p;
            }
        }
        for (i, &composite) in mark[..len].iter().enumerate() {
            if !composite {
                primes.push(low + i as u64);
            }
        }
        low = high + 1;
    }
    primes
}

/// The first `n` primes, ascending. Fails if they do not all fit below 2^32.
pub fn first_n_primes(n: usize) -> Result<Vec<u64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    // Rosser-style upper bound on the nth prime; exact enough to sieve once.
    let mut limit = if n < 6 {
        13
    } else {
        let x = n as f64;
        (x * (x.ln() + x.ln().ln())).ceil() as u64
    }
    .min(DENSE_LIMIT);
    loop {
        let primes = primes_up_to(limit);
        if primes.len() >= n {
            let mut primes = primes;
            primes.truncate(n);
            return Ok(primes);
        }
        if limit >= DENSE_LIMIT {
            return Err(Error::RangeExceeded(format!(
                "the first {n} primes do not fit below 2^32"
            )));
        }
        limit = (limit + limit / 4 + 16).min(DENSE_LIMIT);
    }
}

/// A residue class `residue mod modulus` that can contain infinitely many
/// primes, i.e. with `0 < residue < modulus` and `gcd(residue, modulus) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProgressionSpec {
    residue: u64,
    modulus: u64,
}

impl ProgressionSpec {
    pub fn new(residue: u64, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidProgression {
                residue,
                modulus,
                reason: "modulus must be at least 2",
            });
        }
        if residue == 0 || residue >= modulus {
            return Err(Error::InvalidProgression {
                residue,
                modulus,
                reason: "residue must satisfy 0 < residue < modulus",
            });
        }
        if num::integer::gcd(residue, modulus) != 1 {
            return Err(Error::InvalidProgression {
                residue,
                modulus,
                reason: "residue and modulus share a factor, so at most one prime exists",
            });
        }
        Ok(ProgressionSpec { residue, modulus })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// The first `count` primes `p >= min_bound` with `p = residue (mod modulus)`,
/// under the default candidate budget.
pub fn primes_in_ap(spec: &ProgressionSpec, count: usize, min_bound: u64) -> Result<Vec<u64>> {
    primes_in_ap_bounded(spec, count, min_bound, DEFAULT_SEARCH_BUDGET)
}

/// Same as [`primes_in_ap`] with an explicit cap on candidates examined.
pub fn primes_in_ap_bounded(
    spec: &ProgressionSpec,
    count: usize,
    min_bound: u64,
    budget: u64,
) -> Result<Vec<u64>> {
    let m = spec.modulus;
    let r = spec.residue;
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return Ok(out);
    }
    let mut candidate = if min_bound <= r {
        r
    } else {
        let steps = (min_bound - r).div_ceil(m);
        steps
            .checked_mul(m)
            .and_then(|v| v.checked_add(r))
            .ok_or(Error::SearchBudgetExhausted { budget })?
    };
    let mut tested = 0u64;
    while out.len() < count {
        if tested >= budget {
            return Err(Error::SearchBudgetExhausted { budget });
        }
        tested += 1;
        if is_prime(candidate) {
            out.push(candidate);
        }
        candidate = candidate
            .checked_add(m)
            .ok_or(Error::SearchBudgetExhausted { budget })?;
    }
    Ok(out)
}

/// Primality for arbitrary-width naturals: exact below 2^64, Miller-Rabin
/// with a fixed 24-prime witness set above it.
///
/// Callers above 2^64 must confirm whatever they derive from a "prime"
/// verdict by direct computation; the witness set has no known failures but
/// carries no proof.
pub(crate) fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    const WITNESSES: [u64; 24] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    ];
    for &p in &WITNESSES {
        if (n % p).is_zero() {
            return false; // n > 2^64, so a small factor means composite
        }
    }
    let one = BigUint::from(1u32);
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n - 1 > 0");
    let d = &n_minus_1 >> s;
    'witness: for &a in &WITNESSES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: plain sieve.
    fn naive_sieve(limit: usize) -> Vec<u64> {
        let mut composite = vec![false; limit + 1];
        let mut out = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                out.push(i as u64);
                for j in (i * i..=limit).step_by(i) {
                    composite[j] = true;
                }
            }
        }
        out
    }

    #[test]
    fn first_primes_examples() {
        assert_eq!(first_n_primes(0).unwrap(), Vec::<u64>::new());
        assert_eq!(first_n_primes(1).unwrap(), vec![2]);
        assert_eq!(first_n_primes(6).unwrap(), vec![2, 3, 5, 7, 11, 13]);
        let p = first_n_primes(5000).unwrap();
        assert_eq!(p.len(), 5000);
        assert_eq!(*p.last().unwrap(), 48611);
    }

    #[test]
    fn first_primes_match_naive_sieve() {
        let expected = naive_sieve(50_000);
        let got = first_n_primes(expected.len()).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn segmented_sieve_matches_naive_sieve() {
        for limit in [0u64, 1, 2, 3, 10, 100, 65_537, 1_000_000] {
            assert_eq!(
                primes_up_to(limit),
                naive_sieve(limit as usize),
                "limit = {limit}"
            );
        }
    }

    #[test]
    fn progression_examples() {
        let spec = ProgressionSpec::new(19, 156).unwrap();
        assert_eq!(primes_in_ap(&spec, 3, 2).unwrap(), vec![19, 331, 487]);

        let spec = ProgressionSpec::new(25, 156).unwrap();
        assert_eq!(primes_in_ap(&spec, 1, 631).unwrap(), vec![1117]);

        let spec = ProgressionSpec::new(1, 2).unwrap();
        assert_eq!(primes_in_ap(&spec, 2, 3).unwrap(), vec![3, 5]);
    }

    #[test]
    fn progression_results_satisfy_contract() {
        let spec = ProgressionSpec::new(5, 24).unwrap();
        let found = primes_in_ap(&spec, 25, 1000).unwrap();
        assert_eq!(found.len(), 25);
        let mut prev = 0;
        for p in found {
            assert!(is_prime(p));
            assert_eq!(p % 24, 5);
            assert!(p >= 1000);
            assert!(p > prev);
            prev = p;
        }
    }

    #[test]
    fn progression_validation() {
        assert!(matches!(
            ProgressionSpec::new(0, 10),
            Err(Error::InvalidProgression { .. })
        ));
        assert!(matches!(
            ProgressionSpec::new(10, 10),
            Err(Error::InvalidProgression { .. })
        ));
        assert!(matches!(
            ProgressionSpec::new(4, 10),
            Err(Error::InvalidProgression { .. })
        ));
        assert!(ProgressionSpec::new(3, 10).is_ok());
    }

    #[test]
    fn progression_budget_is_enforced() {
        let spec = ProgressionSpec::new(1, 4).unwrap();
        assert_eq!(
            primes_in_ap_bounded(&spec, 1000, 2, 10),
            Err(Error::SearchBudgetExhausted { budget: 10 })
        );
    }

    #[test]
    fn progressions_from_unit_classes_hit_primes_quickly() {
        // Every unit class modulo q(q-1) yields at least 3 primes below 10^6.
        for q in [5u64, 13, 17] {
            let m = q * (q - 1);
            for x in crate::modmath::units(m) {
                let spec = ProgressionSpec::new(x, m).unwrap();
                let ps = primes_in_ap(&spec, 3, 2).unwrap();
                assert!(
                    ps.last().copied().unwrap() < 1_000_000,
                    "class {x} mod {m} was slow: {ps:?}"
                );
            }
        }
    }

    #[test]
    fn probable_prime_agrees_below_64_bits() {
        for n in 0u64..2_000 {
            assert_eq!(is_probable_prime(&BigUint::from(n)), is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn probable_prime_handles_wide_inputs() {
        // 2^89 - 1 is a Mersenne prime; its square is composite.
        let m89 = (BigUint::from(1u32) << 89) - 1u32;
        assert!(is_probable_prime(&m89));
        assert!(!is_probable_prime(&(&m89 * &m89)));
        let even = BigUint::from(1u32) << 80;
        assert!(!is_probable_prime(&even));
    }
}
