//! Sampling the sequence `b^(q*p) mod (q*p) / (q*p)` over primes `p` and
//! verifying where its values accumulate.
//!
//! For a fixed context `(b, q)` the limit points are the fractions `k/q`
//! ("bands"). Which band a prime lands on is decided by classifying
//! `p mod q(q-1)`; once `b^q + k*p < q*p` the residue is exactly
//! `b^q + k*p`, so the distance to the band is exactly `b^q / (q*p)`.

use num::integer::gcd;
use num::rational::Ratio;
use num::{BigInt, BigRational, BigUint, ToPrimitive};

use crate::error::{Error, Result};
use crate::modmath::{is_prime, mod_pow, MODULUS_LIMIT};
use crate::primes::{first_n_primes, is_probable_prime, primes_up_to};
use crate::zsets::{Dichotomy, ModContext};

/// One evaluation of the sequence at `n = q*p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplePoint {
    pub p: u64,
    /// `q * p`.
    pub n: u64,
    /// `b^n mod n`.
    pub residue: u64,
    /// `residue / n` as an exact reduced rational.
    pub value: Ratio<u64>,
    /// Band implied by classifying `p mod q(q-1)`; absent when that residue
    /// is not a unit.
    pub predicted_k: Option<u64>,
    /// Whether `b^q + k*p < q*p`, which pins the residue to `b^q + k*p`.
    pub exact_regime: bool,
}

impl SamplePoint {
    /// Binary64 rendering of the exact value.
    pub fn value_f64(&self) -> f64 {
        self.residue as f64 / self.n as f64
    }
}

/// `base^exp` as a `u128`, or `None` once it overflows.
fn checked_u128_pow(base: u64, exp: u64) -> Option<u128> {
    if exp == 0 {
        return Some(1);
    }
    if base <= 1 {
        return Some(base as u128);
    }
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

/// `|residue/n - k/q|` as an exact rational.
fn band_distance(residue: u64, n: u64, k: u64, q: u64) -> BigRational {
    let lhs = (residue as u128) * (q as u128);
    let rhs = (k as u128) * (n as u128);
    BigRational::new(
        BigInt::from(lhs.abs_diff(rhs)),
        BigInt::from((n as u128) * (q as u128)),
    )
}

fn big_ratio(r: &Ratio<u64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Band predicted for the prime `p`: classify `p mod q(q-1)` when that
/// residue is a unit, otherwise `None`.
pub fn predict_band(ctx: &ModContext, p: u64) -> Option<u64> {
    let m = ctx.exponent_modulus();
    let x = p % m;
    if x == 0 || gcd(x, m) != 1 {
        return None;
    }
    Some(ctx.classify(x).expect("unit residues always classify"))
}

/// Evaluates the sequence at `n = q*p` by one direct modular exponentiation.
pub fn sample(ctx: &ModContext, p: u64) -> Result<SamplePoint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let q = ctx.q();
    let n = q
        .checked_mul(p)
        .filter(|&n| n < MODULUS_LIMIT)
        .ok_or_else(|| Error::RangeExceeded(format!("n = {q}*{p} does not fit below 2^63")))?;
    let residue = mod_pow(ctx.b(), n, n)?.value();
    let predicted_k = predict_band(ctx, p);
    let exact_regime = match (predicted_k, checked_u128_pow(ctx.b(), q)) {
        (Some(k), Some(bq)) => {
            let pinned = bq + (k as u128) * (p as u128);
            let in_regime = pinned < (q as u128) * (p as u128);
            if in_regime {
                debug_assert_eq!(residue as u128, pinned);
            }
            in_regime
        }
        _ => false,
    };
    Ok(SamplePoint {
        p,
        n,
        residue,
        value: Ratio::new(residue, n),
        predicted_k,
        exact_regime,
    })
}

/// The sequence over the first `count` primes, in prime order; callers
/// number the points by position.
pub fn figure_series(ctx: &ModContext, count: usize) -> Result<Vec<SamplePoint>> {
    first_n_primes(count)?
        .into_iter()
        .map(|p| sample(ctx, p))
        .collect()
}

/// First failure of the pinned-residue law, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactLawViolation {
    pub p: u64,
    pub k: u64,
    pub expected: u64,
    pub actual: u64,
}

/// Outcome of checking `residue = b^q + k*p` over a list of primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactLawReport {
    /// Samples inside the exact regime that were compared.
    pub checked: u64,
    /// Samples outside the exact regime (or without a predicted band).
    pub skipped: u64,
    pub violation: Option<ExactLawViolation>,
}

impl ExactLawReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Recomputes every residue directly and compares it against `b^q + k*p`
/// wherever that law applies. Stops at the first counterexample.
pub fn verify_exact_law(ctx: &ModContext, primes: &[u64]) -> Result<ExactLawReport> {
    let mut checked = 0u64;
    let mut skipped = 0u64;
    for &p in primes {
        let pt = sample(ctx, p)?;
        if !pt.exact_regime {
            skipped += 1;
            continue;
        }
        let k = pt
            .predicted_k
            .expect("exact regime implies a predicted band");
        let pinned = checked_u128_pow(ctx.b(), ctx.q())
            .expect("exact regime keeps b^q below the modulus")
            + (k as u128) * (p as u128);
        checked += 1;
        if pt.residue as u128 != pinned {
            return Ok(ExactLawReport {
                checked,
                skipped,
                violation: Some(ExactLawViolation {
                    p,
                    k,
                    expected: pinned as u64,
                    actual: pt.residue,
                }),
            });
        }
    }
    Ok(ExactLawReport {
        checked,
        skipped,
        violation: None,
    })
}

/// Attainment statistics for one band `k/q`.
#[derive(Debug, Clone)]
pub struct BandRecord {
    pub k: u64,
    /// `k/q` as an exact reduced rational.
    pub target: Ratio<u64>,
    /// Samples whose predicted band was `k`.
    pub samples_seen: u64,
    /// Closest approach of those samples to the band; `None` when unseen.
    pub min_distance: Option<f64>,
    /// Whether some sample came within the requested tolerance.
    pub attained: bool,
}

/// Result of sweeping all primes up to a horizon against the predicted bands.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub horizon: u64,
    /// Samples past `p > b^q` (where every band is pinned) that still ended
    /// farther from their band than the pinned law allows.
    pub strays: u64,
    pub overall_pass: bool,
    pub bands: Vec<BandRecord>,
}

/// Streams all primes `p <= horizon`, buckets each sample by its predicted
/// band, and checks that every band the dichotomy promises is approached
/// within `tol`.
///
/// Once `p > b^q` the residue law pins every band, so any such sample
/// farther than `b^q/(q*p_first) + tol` from its band counts as a stray and
/// fails the run.
pub fn verify_derived_set(ctx: &ModContext, horizon: u64, tol: f64) -> Result<VerificationReport> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    let tol_exact = BigRational::from_float(tol).ok_or(Error::InvalidTolerance(tol))?;
    let q = ctx.q();
    let band_ids: Vec<u64> = match ctx.dichotomy() {
        Dichotomy::ZeroOnly => vec![0],
        Dichotomy::FullLadder => (0..q).collect(),
    };
    let mut seen = vec![0u64; q as usize];
    let mut mins: Vec<Option<BigRational>> = vec![None; q as usize];
    let mut strays = 0u64;

    let bq = checked_u128_pow(ctx.b(), q);
    // Primes beyond b^q sit in the pinned regime for every band.
    let pinned_from = bq.filter(|&v| v <= horizon as u128).map(|v| v as u64);
    let mut stray_bound: Option<BigRational> = None;

    for p in primes_up_to(horizon) {
        let pt = sample(ctx, p)?;
        let Some(k) = pt.predicted_k else { continue };
        let d = band_distance(pt.residue, pt.n, k, q);
        seen[k as usize] += 1;
        match &mins[k as usize] {
            Some(m) if *m <= d => {}
            _ => mins[k as usize] = Some(d.clone()),
        }
        if let Some(threshold) = pinned_from {
            if p > threshold {
                let bound = stray_bound.get_or_insert_with(|| {
                    let worst = BigRational::new(
                        BigInt::from(bq.expect("pinned_from implies b^q fits")),
                        BigInt::from((q as u128) * (p as u128)),
                    );
                    worst + &tol_exact
                });
                if d > *bound {
                    strays += 1;
                }
            }
        }
    }

    let bands: Vec<BandRecord> = band_ids
        .into_iter()
        .map(|k| {
            let min = mins[k as usize].take();
            let attained = min.as_ref().is_some_and(|m| *m <= tol_exact);
            BandRecord {
                k,
                target: Ratio::new(k, q),
                samples_seen: seen[k as usize],
                min_distance: min.as_ref().and_then(|m| m.to_f64()),
                attained,
            }
        })
        .collect();
    let overall_pass = strays == 0 && bands.iter().all(|r| r.attained);
    Ok(VerificationReport {
        horizon,
        strays,
        overall_pass,
        bands,
    })
}

/// A sequence value proven to lie strictly inside a requested interval.
///
/// `p` (and hence `n` and `residue`) can exceed 64 bits: narrow intervals
/// high above a large `b^q` need primes far past the machine-word range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalWitness {
    pub q: u64,
    pub k: u64,
    pub p: BigUint,
    pub n: BigUint,
    pub residue: BigUint,
    /// `residue / n`, strictly inside the interval.
    pub value: BigRational,
}

/// Largest `q` the witness search will escalate to; beyond this `b^q`
/// becomes too wide to exponentiate in reasonable time.
const INTERVAL_Q_LIMIT: u64 = 10_000;

const INTERVAL_SEARCH_BUDGET: u64 = 1_000_000;

/// Produces a sequence value strictly inside `(lo, hi)` for base `b`.
///
/// Picks the least prime `q > b^2` whose band spacing `1/q` is finer than
/// the interval, the first band `k/q` inside it, and then a prime `p` in a
/// solution-set class large enough that `value = k/q + b^q/(q*p)` stays
/// under the upper endpoint. The returned value is re-verified by direct
/// exponentiation and exact rational comparison.
pub fn find_in_interval(b: u64, lo: Ratio<u64>, hi: Ratio<u64>) -> Result<IntervalWitness> {
    if b < 2 {
        return Err(Error::BTooSmall(b));
    }
    if hi <= lo {
        return Err(Error::DegenerateInterval);
    }
    if hi > Ratio::from_integer(1) {
        return Err(Error::RangeExceeded(
            "the interval must lie inside [0, 1]".into(),
        ));
    }
    // hi - lo as a u128 fraction, without reducing (keeps all arithmetic
    // overflow-free even for coprime 18-digit denominators).
    let (ln, ld) = (*lo.numer() as u128, *lo.denom() as u128);
    let (hn, hd) = (*hi.numer() as u128, *hi.denom() as u128);
    let diff_num = hn * ld - ln * hd;
    let diff_den = hd * ld;
    let spacing_fits = |q: u64| {
        (q as u128)
            .checked_mul(diff_num)
            .is_none_or(|v| v > diff_den)
    };
    let b_sq = b
        .checked_mul(b)
        .ok_or_else(|| Error::RangeExceeded("b^2 does not fit in 64 bits".into()))?;
    // Least prime q with q > b^2 and 1/q < hi - lo.
    let q_floor = u64::try_from(diff_den / diff_num).unwrap_or(u64::MAX);
    if q_floor >= INTERVAL_Q_LIMIT {
        return Err(Error::RangeExceeded(format!(
            "the interval is too narrow: it needs a band denominator past {INTERVAL_Q_LIMIT}"
        )));
    }
    let mut q = q_floor.max(b_sq).max(2) + 1;
    loop {
        if q > INTERVAL_Q_LIMIT {
            return Err(Error::RangeExceeded(format!(
                "the interval is too narrow: it needs a band denominator past {INTERVAL_Q_LIMIT}"
            )));
        }
        if is_prime(q) && spacing_fits(q) {
            break;
        }
        q += 1;
    }

    // First band strictly above lo; it stays below hi because the spacing
    // 1/q is finer than the interval.
    let qw = q as u128;
    let k = (ln * qw / ld + 1) as u64;
    debug_assert!((k as u128) * ld > ln * qw && (k as u128) * hd < hn * qw);

    let ctx = ModContext::new(b, q)?;
    let x = *ctx
        .zk_structural(k)?
        .first()
        .expect("q > b^2 populates every solution set");

    // Least p with k/q + b^q/(q*p) < hi, i.e. p > b^q*hd / (hn*q - k*hd).
    let bq = BigUint::from(b).pow(u32::try_from(q).expect("q fits in 32 bits"));
    let hi_num = BigUint::from(hn);
    let hi_den = BigUint::from(hd);
    let headroom = &hi_num * q - BigUint::from(k) * &hi_den;
    let p_min = (&bq * &hi_den) / &headroom + 1u32;

    // Step through p = x (mod q(q-1)) starting at p_min.
    let class_modulus = ctx.exponent_modulus();
    let rem = (&p_min % class_modulus)
        .to_u64()
        .expect("remainder fits by construction");
    let mut p = &p_min + ((x + class_modulus - rem) % class_modulus);
    let lo_big = big_ratio(&lo);
    let hi_big = big_ratio(&hi);
    let mut examined = 0u64;
    loop {
        if examined >= INTERVAL_SEARCH_BUDGET {
            return Err(Error::SearchBudgetExhausted {
                budget: INTERVAL_SEARCH_BUDGET,
            });
        }
        examined += 1;
        if is_probable_prime(&p) {
            let n = &p * q;
            let residue = BigUint::from(b).modpow(&n, &n);
            // For a genuine prime the residue is pinned to b^q + k*p; a
            // pseudoprime that slipped through would fail here and the
            // search simply continues.
            if residue == &bq + BigUint::from(k) * &p {
                let value =
                    BigRational::new(BigInt::from(residue.clone()), BigInt::from(n.clone()));
                if lo_big < value && value < hi_big {
                    return Ok(IntervalWitness {
                        q,
                        k,
                        p,
                        n,
                        residue,
                        value,
                    });
                }
                debug_assert!(false, "constructed witness landed outside the interval");
            }
        }
        p += class_modulus;
    }
}
