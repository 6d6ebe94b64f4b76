use num_bigint::BigUint;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

/// Deterministic generator keyed by an arbitrary byte-string seed.
///
/// The seed is hashed with SHA-256 and the digest keys a ChaCha20 stream.
/// A domain label separates independent streams drawn from the same seed.
#[derive(Clone, Debug)]
pub struct DealerRng(ChaCha20Rng);

impl DealerRng {
    pub fn new(seed: &[u8]) -> Self {
        Self::with_domain(seed, b"")
    }

    pub fn with_domain(seed: &[u8], domain: &[u8]) -> Self {
        let mut hasher = Sha256::new();
        hasher.update((domain.len() as u64).to_be_bytes());
        hasher.update(domain);
        hasher.update(seed);
        let key: [u8; 32] = hasher.finalize().into();
        DealerRng(ChaCha20Rng::from_seed(key))
    }

    /// Uniform integer with exactly `bits` bits (top bit set).
    pub fn gen_bits_exact(&mut self, bits: u64) -> BigUint {
        assert!(bits >= 1);
        let mut n = self.gen_bits(bits);
        n.set_bit(bits - 1, true);
        n
    }

    /// Uniform integer in `[0, 2^bits)`.
    pub fn gen_bits(&mut self, bits: u64) -> BigUint {
        let nbytes = bits.div_ceil(8) as usize;
        let mut buf = vec![0u8; nbytes];
        self.0.fill_bytes(&mut buf);
        let excess = nbytes as u64 * 8 - bits;
        if excess > 0 {
            buf[0] &= 0xff >> excess;
        }
        BigUint::from_bytes_be(&buf)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }
}

impl RngCore for DealerRng {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }
    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }
    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.0.fill_bytes(dest)
    }
    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.0.try_fill_bytes(dest)
    }
}

/// Uniform integer in `[0, bound)` by rejection sampling. `bound` must be nonzero.
pub fn random_below(rng: &mut DealerRng, bound: &BigUint) -> BigUint {
    assert!(bound.bits() > 0, "random_below: zero bound");
    let bits = bound.bits();
    loop {
        let candidate = rng.gen_bits(bits);
        if &candidate < bound {
            return candidate;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = DealerRng::new(b"seed");
        let mut b = DealerRng::new(b"seed");
        for _ in 0..16 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn domains_are_independent() {
        let mut a = DealerRng::with_domain(b"seed", b"primes");
        let mut b = DealerRng::with_domain(b"seed", b"shamir");
        assert_ne!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn exact_bit_length() {
        let mut rng = DealerRng::new(&[1]);
        for bits in 1..80 {
            assert_eq!(rng.gen_bits_exact(bits).bits(), bits);
            assert!(rng.gen_bits(bits).bits() <= bits);
        }
    }

    #[test]
    fn below_bound() {
        let mut rng = DealerRng::new(&[2]);
        let bound = BigUint::from(257u32);
        for _ in 0..500 {
            assert!(random_below(&mut rng, &bound) < bound);
        }
    }
}
