//! The dealer and reconstructor.
//!
//! Every participant holds one prime. Each authorized set is characterized by
//! the product of its members' primes, and the public polynomial
//! `y(x) = (x - c_1)...(x - c_k) + S` vanishes, up to the secret, exactly at
//! those products. A coalition multiplies its primes into `r` and evaluates
//! `y(r)`: it gets `S` when it is one of the authorized sets and an unrelated
//! integer otherwise. Nothing in the output says which of the two happened.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Num, One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::access::{AccessError, AccessStructure, Coalition, Participant};
use crate::polyarith::{
    generate_distinct_primes, is_probable_prime, poly_from_roots, DealerRng, Polynomial,
    PrimeError, MILLER_RABIN_ROUNDS,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("subset is empty")]
    EmptySubset,
    #[error("coalition is empty")]
    EmptyCoalition,
    #[error("participant {0:?} has no share")]
    UnknownParticipant(String),
    #[error("duplicate share for participant {0:?}")]
    DuplicateShare(String),
    #[error(transparent)]
    Primes(#[from] PrimeError),
    #[error(transparent)]
    Structure(#[from] AccessError),
    #[error("bad prime assignment: {0}")]
    BadPrimes(String),
    #[error("public polynomial: {0}")]
    BadPublic(String),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

/// A participant's secret share: one prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeShare {
    pub participant: Participant,
    pub prime: BigUint,
}

/// Share file contents: `{"participant": "A", "prime": "2"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShareFile {
    pub participant: String,
    pub prime: String,
}

impl From<&PrimeShare> for ShareFile {
    fn from(s: &PrimeShare) -> Self {
        ShareFile {
            participant: s.participant.id().to_owned(),
            prime: s.prime.to_str_radix(10),
        }
    }
}

impl TryFrom<&ShareFile> for PrimeShare {
    type Error = SchemeError;

    fn try_from(f: &ShareFile) -> Result<Self, SchemeError> {
        if f.participant.is_empty() {
            return Err(SchemeError::Parse {
                what: "participant",
                input: f.participant.clone(),
            });
        }
        Ok(PrimeShare {
            participant: Participant::from(f.participant.as_str()),
            prime: parse_decimal_uint(&f.prime, "prime")?,
        })
    }
}

pub type ShareMap = BTreeMap<Participant, PrimeShare>;

/// The secret: any non-negative integer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Secret(BigUint);

impl Secret {
    pub fn new(value: BigUint) -> Self {
        Secret(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    /// Big-endian integer reading of a byte string.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        Secret(BigUint::from_bytes_be(bytes))
    }

    /// Minimal big-endian bytes (zero is the empty string).
    pub fn to_bytes(&self) -> Vec<u8> {
        if self.0.is_zero() {
            Vec::new()
        } else {
            self.0.to_bytes_be()
        }
    }
}

impl From<u64> for Secret {
    fn from(v: u64) -> Self {
        Secret(BigUint::from(v))
    }
}

/// Accepts decimal or `0x`-prefixed big-endian hex.
impl FromStr for Secret {
    type Err = SchemeError;

    fn from_str(s: &str) -> Result<Self, SchemeError> {
        let s = s.trim();
        let bad = || SchemeError::Parse {
            what: "secret",
            input: s.to_owned(),
        };
        if let Some(hex_digits) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            if hex_digits.is_empty() {
                return Err(bad());
            }
            let padded = if hex_digits.len() % 2 == 1 {
                format!("0{hex_digits}")
            } else {
                hex_digits.to_owned()
            };
            let bytes = hex::decode(padded).map_err(|_| bad())?;
            return Ok(Secret::from_bytes(&bytes));
        }
        parse_decimal_uint(s, "secret").map(Secret)
    }
}

impl fmt::Display for Secret {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn parse_decimal_uint(s: &str, what: &'static str) -> Result<BigUint, SchemeError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(SchemeError::Parse {
            what,
            input: s.to_owned(),
        });
    }
    BigUint::from_str_radix(s, 10).map_err(|_| SchemeError::Parse {
        what,
        input: s.to_owned(),
    })
}

pub(crate) fn parse_decimal_int(s: &str, what: &'static str) -> Result<BigInt, SchemeError> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(SchemeError::Parse {
            what,
            input: s.to_owned(),
        });
    }
    BigInt::from_str_radix(s, 10).map_err(|_| SchemeError::Parse {
        what,
        input: s.to_owned(),
    })
}

/// The published polynomial: monic, degree k = number of authorized sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicPolynomial {
    poly: Polynomial,
}

impl PublicPolynomial {
    pub fn new(poly: Polynomial) -> Result<Self, SchemeError> {
        match poly.degree() {
            None | Some(0) => Err(SchemeError::BadPublic("degree must be at least 1".into())),
            Some(_) if !poly.is_monic() => Err(SchemeError::BadPublic("not monic".into())),
            Some(_) => Ok(PublicPolynomial { poly }),
        }
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn k(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn to_file(&self) -> PublicPolynomialFile {
        PublicPolynomialFile {
            k: self.k(),
            coefficients: self
                .poly
                .coefficients()
                .iter()
                .map(|c| c.to_str_radix(10))
                .collect(),
        }
    }

    pub fn from_file(file: &PublicPolynomialFile) -> Result<Self, SchemeError> {
        let coeffs = file
            .coefficients
            .iter()
            .map(|c| parse_decimal_int(c, "coefficient"))
            .collect::<Result<Vec<_>, _>>()?;
        let public = PublicPolynomial::new(Polynomial::new(coeffs))?;
        if public.k() != file.k || file.coefficients.len() != file.k + 1 {
            return Err(SchemeError::BadPublic(format!(
                "k = {} but {} coefficients given",
                file.k,
                file.coefficients.len()
            )));
        }
        Ok(public)
    }
}

/// Public polynomial file: `{"k": 2, "coefficients": ["132","-21","1"]}`,
/// ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublicPolynomialFile {
    pub k: usize,
    pub coefficients: Vec<String>,
}

/// Output of the dealer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dealing {
    pub shares: ShareMap,
    /// Characteristic numbers in canonical authorized-set order.
    pub characteristic_numbers: Vec<BigUint>,
    pub public: PublicPolynomial,
}

impl Dealing {
    pub fn share(&self, id: &str) -> Option<&PrimeShare> {
        self.shares.get(&Participant::from(id))
    }

    /// Shares of a coalition, in canonical order.
    pub fn shares_of(&self, structure: &AccessStructure, c: Coalition) -> Vec<PrimeShare> {
        c.members()
            .map(|i| self.shares[&structure.participants()[i]].clone())
            .collect()
    }
}

/// Product of the primes held by `subset`.
pub fn characteristic_number(
    subset: &[Participant],
    shares: &ShareMap,
) -> Result<BigUint, SchemeError> {
    if subset.is_empty() {
        return Err(SchemeError::EmptySubset);
    }
    subset.iter().try_fold(BigUint::one(), |acc, p| {
        shares
            .get(p)
            .map(|s| acc * &s.prime)
            .ok_or_else(|| SchemeError::UnknownParticipant(p.id().to_owned()))
    })
}

/// Deals shares and the public polynomial with freshly generated primes.
pub fn deal(
    structure: &AccessStructure,
    secret: &Secret,
    bit_length: u64,
    seed: &[u8],
) -> Result<Dealing, SchemeError> {
    let primes = generate_distinct_primes(structure.n(), bit_length, seed)?;
    build_dealing(structure, secret, primes)
}

/// Deals with caller-chosen primes, one per participant in canonical order.
pub fn deal_with_primes(
    structure: &AccessStructure,
    secret: &Secret,
    primes: Vec<BigUint>,
) -> Result<Dealing, SchemeError> {
    if primes.len() != structure.n() {
        return Err(SchemeError::BadPrimes(format!(
            "{} primes for {} participants",
            primes.len(),
            structure.n()
        )));
    }
    let distinct: BTreeSet<&BigUint> = primes.iter().collect();
    if distinct.len() != primes.len() {
        return Err(SchemeError::BadPrimes("primes are not distinct".into()));
    }
    let mut rng = DealerRng::new(b"gsss/forced-primes");
    if let Some(p) = primes
        .iter()
        .find(|p| !is_probable_prime(p, MILLER_RABIN_ROUNDS, &mut rng))
    {
        return Err(SchemeError::BadPrimes(format!("{p} is not prime")));
    }
    build_dealing(structure, secret, primes)
}

fn build_dealing(
    structure: &AccessStructure,
    secret: &Secret,
    primes: Vec<BigUint>,
) -> Result<Dealing, SchemeError> {
    let shares: ShareMap = structure
        .participants()
        .iter()
        .zip(primes)
        .map(|(p, prime)| {
            (
                p.clone(),
                PrimeShare {
                    participant: p.clone(),
                    prime,
                },
            )
        })
        .collect();
    let characteristic_numbers = structure
        .authorized_sets()
        .iter()
        .map(|&set| {
            let members: Vec<Participant> = set
                .members()
                .map(|i| structure.participants()[i].clone())
                .collect();
            characteristic_number(&members, &shares)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let roots: Vec<BigInt> = characteristic_numbers.iter().cloned().map(BigInt::from).collect();
    let poly = poly_from_roots(&roots, &BigInt::from(secret.value().clone()));
    Ok(Dealing {
        shares,
        characteristic_numbers,
        public: PublicPolynomial::new(poly)?,
    })
}

/// The value `r` a coalition feeds into the public polynomial.
pub fn coalition_product(shares: &[PrimeShare]) -> Result<BigUint, SchemeError> {
    if shares.is_empty() {
        return Err(SchemeError::EmptyCoalition);
    }
    let mut seen = BTreeSet::new();
    let mut primes = BTreeSet::new();
    let mut r = BigUint::one();
    for s in shares {
        if !seen.insert(&s.participant) || !primes.insert(&s.prime) {
            return Err(SchemeError::DuplicateShare(s.participant.id().to_owned()));
        }
        r *= &s.prime;
    }
    Ok(r)
}

/// `y(r)`. Equal to the secret exactly when `r` is a characteristic number.
pub fn reconstruct(public: &PublicPolynomial, r: &BigUint) -> BigInt {
    public.poly.eval(&BigInt::from(r.clone()))
}
