#![allow(dead_code)]

use gsss::polyarith::{random_below, DealerRng};
use gsss::scheme::{deal, Dealing, Secret};
use gsss::{AccessStructure, BigUint};

pub struct Instance {
    pub structure: AccessStructure,
    pub secret: Secret,
    pub dealing: Dealing,
}

/// Random desk-scale instance: n ≤ 6 participants, 1 ≤ k ≤ 8 distinct sets,
/// 16-bit primes, secret below 2^64.
pub fn random_instance(rng: &mut DealerRng, index: u64) -> Instance {
    let n = 1 + (rng.next_u64() % 6) as usize;
    let subsets = (1u64 << n) - 1;
    let k = 1 + (rng.next_u64() % subsets.min(8)) as usize;
    let mut masks = Vec::new();
    while masks.len() < k {
        let m = 1 + rng.next_u64() % subsets;
        if !masks.contains(&m) {
            masks.push(m);
        }
    }
    let ids: Vec<String> = (0..n).map(|i| format!("P{i}")).collect();
    let structure = AccessStructure::from_masks(ids, &masks).unwrap();
    let secret = Secret::new(random_below(rng, &(BigUint::from(1u8) << 64u32)));
    let seed = format!("instance-{index}");
    let dealing = deal(&structure, &secret, 16, seed.as_bytes()).unwrap();
    Instance {
        structure,
        secret,
        dealing,
    }
}

pub fn random_instances(count: u64, seed: &[u8]) -> Vec<Instance> {
    let mut rng = DealerRng::new(seed);
    (0..count).map(|i| random_instance(&mut rng, i)).collect()
}

/// Approximate value of a rational, for tolerance comparisons only.
pub fn to_f64(x: &gsss::BigRational) -> f64 {
    let n: f64 = x.numer().to_string().parse().unwrap();
    let d: f64 = x.denom().to_string().parse().unwrap();
    n / d
}
