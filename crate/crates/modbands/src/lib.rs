//! Solution sets and limit-point bands of `b^n mod n` over two-prime products.
//!
//! Fix a base `b >= 2` and an odd prime `q` not dividing `b`. Among the unit
//! residues `x` modulo `q(q-1)` the congruence `b^x = k*x + b (mod q)`
//! partitions the units into solution sets `Z_k`, one per slope
//! `k = 0, ..., q-1`. Whenever a prime `p` falls in `Z_k` modulo `q(q-1)`,
//! the normalized sequence value `b^(q*p) mod (q*p) / (q*p)` lands near the
//! band `k/q` — exactly on `(b^q + k*p)/(q*p)` once `p` is large enough —
//! so the bands `k/q` are precisely the accumulation points of the sequence
//! along `n = q*p`.
//!
//! The crate computes the sets two independent ways (a direct scan and a
//! structural construction through the unit-group splitting of `x` into a
//! pair `(alpha, beta)`), samples and plots the sequence, verifies the
//! band predictions against direct exponentiation, and searches out a prime
//! `p` whose sequence value lands inside any requested subinterval of
//! `(0, 1)`.
//!
//! ```
//! use modbands::{ModContext, Method};
//!
//! let ctx = ModContext::new(2, 13)?;
//! assert_eq!(ctx.zk_structural(8)?, vec![19, 137, 155]);
//!
//! let sets = ctx.all_sets(Method::Structural);
//! assert_eq!(sets.set(0).len(), 12);     // (q-1) * m_b solutions of slope 0
//! assert_eq!(sets.sets().len(), 13);     // one set per slope k = 0..q-1
//! # Ok::<(), modbands::Error>(())
//! ```

pub mod decomp;
pub mod error;
pub mod modmath;
pub mod primes;
pub mod sampler;
pub mod zsets;

pub use decomp::{compose, decompose, UnitDecomposition};
pub use error::{Error, Result};
pub use modmath::{
    euler_phi, is_prime, mod_inverse, mod_pow, multiplicative_order, units, Residue, MODULUS_LIMIT,
};
pub use primes::{
    first_n_primes, primes_in_ap, primes_in_ap_bounded, primes_up_to, ProgressionSpec,
    DEFAULT_SEARCH_BUDGET,
};
pub use sampler::{
    figure_series, find_in_interval, predict_band, sample, verify_derived_set, verify_exact_law,
    BandRecord, ExactLawReport, ExactLawViolation, IntervalWitness, SamplePoint,
    VerificationReport,
};
pub use zsets::{dichotomy, Dichotomy, Method, ModContext, SolutionSets};
