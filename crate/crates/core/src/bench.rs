//! Timing of public-polynomial evaluation as k grows.
//!
//! Two workloads:
//! - `Fixed`: a monic degree-k polynomial with random 64-bit coefficients,
//!   evaluated at x = -1 so every Horner step works on operands of bounded
//!   size. This isolates the operation count, which is linear in k.
//! - `Dealt`: a real dealt instance evaluated at a characteristic number.
//!   Coefficients and intermediate values grow with k, so bit cost grows
//!   faster than linearly; dealing itself is quadratic, so keep k modest.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::access::AccessStructure;
use crate::polyarith::{DealerRng, Polynomial};
use crate::scheme::{deal, reconstruct, SchemeError, Secret};

pub const FIXED_COEFF_BITS: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchMode {
    Fixed,
    Dealt { bit_length: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub k: usize,
    /// Median nanoseconds per evaluation.
    pub nanoseconds: u128,
}

/// Monic degree-k polynomial with uniformly random `bits`-bit coefficients.
pub fn fixed_size_polynomial(k: usize, bits: u64, seed: &[u8]) -> Polynomial {
    let mut rng = DealerRng::with_domain(seed, b"gsss/bench");
    let mut coeffs: Vec<BigInt> = (0..k)
        .map(|i| {
            let mag = BigInt::from(rng.gen_bits(bits));
            if i % 2 == 0 {
                mag
            } else {
                -mag
            }
        })
        .collect();
    coeffs.push(BigInt::from(1));
    Polynomial::new(coeffs)
}

/// Median time of one evaluation of `p` at `x` over `reps` timed batches.
pub fn median_eval_time(p: &Polynomial, x: &BigInt, reps: usize) -> Duration {
    let k = p.degree().unwrap_or(0).max(1);
    // batch cheap evaluations so each sample is well above timer resolution
    let inner = (20_000 / k).max(1);
    let mut samples: Vec<Duration> = (0..reps.max(1))
        .map(|_| {
            let start = Instant::now();
            for _ in 0..inner {
                std::hint::black_box(p.eval(std::hint::black_box(x)));
            }
            start.elapsed() / inner as u32
        })
        .collect();
    samples.sort();
    samples[samples.len() / 2]
}

/// Synthetic structure with k distinct authorized sets over just enough
/// participants.
pub fn synthetic_structure(k: usize) -> AccessStructure {
    let n = (usize::BITS - k.leading_zeros()) as usize;
    let n = n.max(1);
    let ids: Vec<String> = (0..n).map(|i| format!("P{i:02}")).collect();
    let masks: Vec<u64> = (1..=k as u64).collect();
    AccessStructure::from_masks(ids, &masks).expect("synthetic structure is valid")
}

pub fn run(k_list: &[usize], mode: BenchMode, reps: usize) -> Result<Vec<BenchRow>, SchemeError> {
    k_list
        .iter()
        .map(|&k| {
            let elapsed = match mode {
                BenchMode::Fixed => {
                    let p = fixed_size_polynomial(k, FIXED_COEFF_BITS, b"bench");
                    median_eval_time(&p, &BigInt::from(-1), reps)
                }
                BenchMode::Dealt { bit_length } => {
                    let structure = synthetic_structure(k);
                    let dealing = deal(&structure, &Secret::from(42), bit_length, b"bench")?;
                    let r: &BigUint = &dealing.characteristic_numbers[0];
                    debug_assert_eq!(reconstruct(&dealing.public, r), BigInt::from(42));
                    median_eval_time(dealing.public.poly(), &BigInt::from(r.clone()), reps)
                }
            };
            Ok(BenchRow {
                k,
                nanoseconds: elapsed.as_nanos(),
            })
        })
        .collect()
}
