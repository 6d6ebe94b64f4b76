//! Exact integer polynomial arithmetic and seeded prime generation.
//!
//! Everything in here is exact: coefficients are [`BigInt`]s, rational
//! points are [`BigRational`]s, and nothing is ever rounded.

mod poly;
mod primes;
mod rng;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

pub use poly::{poly_derivative, poly_eval, poly_from_roots, Polynomial};
pub use primes::{
    generate_distinct_primes, is_probable_prime, PrimeError, MILLER_RABIN_ROUNDS,
};
pub use rng::{random_below, DealerRng};
