use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use super::rng::{random_below, DealerRng};

pub const MILLER_RABIN_ROUNDS: usize = 64;

// At or below this size the whole prime range is sieved, which makes the
// InsufficientPrimes check exact and selection a plain shuffle.
const SIEVE_MAX_BITS: u64 = 22;

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
    89, 97,
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrimeError {
    #[error("bit length {0} is too small, need at least 2")]
    InvalidBitLength(u64),
    #[error("requested {requested} primes but only {available} primes have exactly {bit_length} bits")]
    InsufficientPrimes {
        requested: usize,
        available: u64,
        bit_length: u64,
    },
    #[error("prime count must be at least 1")]
    ZeroCount,
}

/// Miller–Rabin with `rounds` random witnesses drawn from `rng`.
pub fn is_probable_prime(n: &BigUint, rounds: usize, rng: &mut DealerRng) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigUint::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    // witnesses in [2, n-2]
    let span = n - 3u32;
    'witness: for _ in 0..rounds {
        let a = random_below(rng, &span) + 2u32;
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
            if x.is_one() {
                return false;
            }
        }
        return false;
    }
    true
}

/// Draws `count` pairwise-distinct primes of exactly `bit_length` bits.
///
/// Deterministic in `seed`. Probable primes are certified by
/// [`MILLER_RABIN_ROUNDS`] rounds; sizes up to 22 bits come from an exact
/// sieve instead.
pub fn generate_distinct_primes(
    count: usize,
    bit_length: u64,
    seed: &[u8],
) -> Result<Vec<BigUint>, PrimeError> {
    if bit_length < 2 {
        return Err(PrimeError::InvalidBitLength(bit_length));
    }
    if count == 0 {
        return Err(PrimeError::ZeroCount);
    }
    let mut rng = DealerRng::with_domain(seed, b"gsss/primes");
    if bit_length <= SIEVE_MAX_BITS {
        return sample_from_sieve(count, bit_length, &mut rng);
    }
    // Far more than enough primes exist at these sizes for any count that
    // fits in memory; reject only absurd requests.
    let available_lower = approx_prime_count_lower(bit_length);
    if (count as f64) > available_lower {
        return Err(PrimeError::InsufficientPrimes {
            requested: count,
            available: available_lower as u64,
            bit_length,
        });
    }
    let mut issued = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut candidate = rng.gen_bits_exact(bit_length);
        candidate.set_bit(0, true);
        if issued.contains(&candidate) {
            continue;
        }
        if is_probable_prime(&candidate, MILLER_RABIN_ROUNDS, &mut rng) {
            issued.insert(candidate.clone());
            out.push(candidate);
        }
    }
    Ok(out)
}

// Lower estimate of the number of primes in [2^(b-1), 2^b).
fn approx_prime_count_lower(bits: u64) -> f64 {
    let b = bits as f64;
    let hi = 2f64.powf(b);
    let lo = 2f64.powf(b - 1.0);
    hi / (hi.ln() + 2.0) - lo / (lo.ln() - 1.5)
}

fn sample_from_sieve(
    count: usize,
    bit_length: u64,
    rng: &mut DealerRng,
) -> Result<Vec<BigUint>, PrimeError> {
    let lo = 1u64 << (bit_length - 1);
    let hi = 1u64 << bit_length;
    let mut pool: Vec<u64> = sieve(hi).into_iter().filter(|&p| p >= lo).collect();
    if pool.len() < count {
        return Err(PrimeError::InsufficientPrimes {
            requested: count,
            available: pool.len() as u64,
            bit_length,
        });
    }
    // partial Fisher–Yates
    for i in 0..count {
        let remaining = BigUint::from((pool.len() - i) as u64);
        let j = i + random_below(rng, &remaining).to_usize().unwrap();
        pool.swap(i, j);
    }
    Ok(pool[..count].iter().map(|&p| BigUint::from(p)).collect())
}

fn sieve(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit];
    let mut primes = Vec::new();
    for i in 2..limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j < limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}
