//! Baseline (n, t) threshold scheme over GF(q).

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyarith::{is_probable_prime, random_below, DealerRng, MILLER_RABIN_ROUNDS};
use crate::scheme::parse_decimal_uint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShamirError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("need {needed} shares, got {got}")]
    NotEnoughShares { needed: usize, got: usize },
    #[error("two shares have x = {0}")]
    DuplicateX(BigUint),
    #[error("malformed share: {0}")]
    BadShare(String),
}

/// 2^61 − 1, the default field modulus.
pub fn mersenne61() -> BigUint {
    (BigUint::one() << 61u32) - 1u32
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdParams {
    pub n: usize,
    pub t: usize,
    pub q: BigUint,
}

impl ThresholdParams {
    pub fn new(n: usize, t: usize, q: BigUint) -> Result<Self, ShamirError> {
        let params = ThresholdParams { n, t, q };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), ShamirError> {
        if self.t == 0 || self.t > self.n {
            return Err(ShamirError::InvalidParams(format!(
                "need 1 <= t <= n, got t = {}, n = {}",
                self.t, self.n
            )));
        }
        if BigUint::from(self.n) >= self.q {
            return Err(ShamirError::InvalidParams(format!(
                "n = {} must be below q = {}",
                self.n, self.q
            )));
        }
        let mut rng = DealerRng::new(b"gsss/shamir/modulus");
        if !is_probable_prime(&self.q, MILLER_RABIN_ROUNDS, &mut rng) {
            return Err(ShamirError::InvalidParams(format!("q = {} is not prime", self.q)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThresholdShare {
    pub x: BigUint,
    pub y: BigUint,
}

/// `{"x": "1", "y": "117", "q": "257", "t": 2}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdShareFile {
    pub x: String,
    pub y: String,
    pub q: String,
    pub t: usize,
}

impl ThresholdShareFile {
    pub fn new(share: &ThresholdShare, params: &ThresholdParams) -> Self {
        ThresholdShareFile {
            x: share.x.to_str_radix(10),
            y: share.y.to_str_radix(10),
            q: params.q.to_str_radix(10),
            t: params.t,
        }
    }

    /// Returns the share together with the modulus and threshold it carries.
    pub fn parse(&self) -> Result<(ThresholdShare, BigUint, usize), ShamirError> {
        let num = |s: &str, what| {
            parse_decimal_uint(s, what).map_err(|e| ShamirError::BadShare(e.to_string()))
        };
        let share = ThresholdShare {
            x: num(&self.x, "x")?,
            y: num(&self.y, "y")?,
        };
        Ok((share, num(&self.q, "q")?, self.t))
    }
}

fn mod_inv(a: &BigUint, q: &BigUint) -> BigUint {
    // q is prime
    a.modpow(&(q - 2u32), q)
}

fn mod_sub(a: &BigUint, b: &BigUint, q: &BigUint) -> BigUint {
    ((a + q) - (b % q)) % q
}

fn eval_mod(coeffs: &[BigUint], x: &BigUint, q: &BigUint) -> BigUint {
    coeffs
        .iter()
        .rev()
        .fold(BigUint::zero(), |acc, c| (acc * x + c) % q)
}

/// Splits `secret` into `params.n` shares at x = 1..n.
pub fn shamir_split(
    secret: &BigUint,
    params: &ThresholdParams,
    seed: &[u8],
) -> Result<Vec<ThresholdShare>, ShamirError> {
    params.validate()?;
    if secret >= &params.q {
        return Err(ShamirError::InvalidParams(format!(
            "secret must be below q = {}",
            params.q
        )));
    }
    let mut rng = DealerRng::with_domain(seed, b"gsss/shamir");
    let mut coeffs = vec![secret.clone()];
    coeffs.extend((1..params.t).map(|_| random_below(&mut rng, &params.q)));
    Ok((1..=params.n)
        .map(|i| {
            let x = BigUint::from(i);
            let y = eval_mod(&coeffs, &x, &params.q);
            ThresholdShare { x, y }
        })
        .collect())
}

/// Recovers the secret from serialized shares, which must agree on `q` and `t`.
pub fn combine_share_files(files: &[ThresholdShareFile]) -> Result<BigUint, ShamirError> {
    let mut shares = Vec::with_capacity(files.len());
    let mut params: Option<(BigUint, usize)> = None;
    for (i, file) in files.iter().enumerate() {
        let (share, q, t) = file.parse()?;
        match &params {
            Some((pq, pt)) if *pq != q || *pt != t => {
                return Err(ShamirError::BadShare(format!(
                    "share {i}: modulus or threshold differs from the other shares"
                )))
            }
            Some(_) => {}
            None => params = Some((q, t)),
        }
        shares.push(share);
    }
    let Some((q, t)) = params else {
        return Err(ShamirError::NotEnoughShares { needed: 1, got: 0 });
    };
    // n is not recorded in share files; the shares at hand bound it below
    let n = shares.len().max(t);
    shamir_reconstruct(&shares, &ThresholdParams::new(n, t, q)?)
}

/// Lagrange interpolation at x = 0 over the first `t` shares.
pub fn shamir_reconstruct(
    shares: &[ThresholdShare],
    params: &ThresholdParams,
) -> Result<BigUint, ShamirError> {
    if shares.len() < params.t {
        return Err(ShamirError::NotEnoughShares {
            needed: params.t,
            got: shares.len(),
        });
    }
    check_points(shares, &params.q)?;
    let q = &params.q;
    let used = &shares[..params.t];
    let mut secret = BigUint::zero();
    for (i, si) in used.iter().enumerate() {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (j, sj) in used.iter().enumerate() {
            if i != j {
                // basis_i(0) = Π x_j / (x_j - x_i)
                num = num * &sj.x % q;
                den = den * mod_sub(&sj.x, &si.x, q) % q;
            }
        }
        secret = (secret + &si.y * num % q * mod_inv(&den, q)) % q;
    }
    Ok(secret)
}

fn check_points(shares: &[ThresholdShare], q: &BigUint) -> Result<(), ShamirError> {
    let mut xs = BTreeSet::new();
    for s in shares {
        if (&s.x % q).is_zero() {
            return Err(ShamirError::BadShare("x must be nonzero mod q".into()));
        }
        if &s.y >= q || &s.x >= q {
            return Err(ShamirError::BadShare("coordinate not reduced mod q".into()));
        }
        if !xs.insert(s.x.clone()) {
            return Err(ShamirError::DuplicateX(s.x.clone()));
        }
    }
    Ok(())
}

/// Coefficients (ascending) of the unique polynomial of degree < `points.len()`
/// through `points` over GF(q).
pub fn interpolate(points: &[(BigUint, BigUint)], q: &BigUint) -> Vec<BigUint> {
    let m = points.len();
    let mut out = vec![BigUint::zero(); m];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis numerator Π_{j≠i} (x - x_j), built up in ascending order
        let mut basis = vec![BigUint::one()];
        let mut den = BigUint::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let neg_xj = mod_sub(&BigUint::zero(), xj, q);
            let mut next = vec![BigUint::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] = (&next[d + 1] + c) % q;
                next[d] = (&next[d] + c * &neg_xj) % q;
            }
            basis = next;
            den = den * mod_sub(xi, xj, q) % q;
        }
        let scale = yi * mod_inv(&den, q) % q;
        for (d, c) in basis.iter().enumerate() {
            out[d] = (&out[d] + c * &scale) % q;
        }
    }
    out
}

/// Given fewer than `t` shares, builds a degree-(t−1) polynomial through all
/// of them whose constant term is `candidate`. Such a polynomial exists for
/// every candidate, which is why t−1 shares say nothing about the secret.
pub fn consistent_polynomial(
    shares: &[ThresholdShare],
    candidate: &BigUint,
    params: &ThresholdParams,
) -> Result<Vec<BigUint>, ShamirError> {
    if shares.len() >= params.t {
        return Err(ShamirError::InvalidParams(format!(
            "{} shares already determine the secret at t = {}",
            shares.len(),
            params.t
        )));
    }
    if candidate >= &params.q {
        return Err(ShamirError::InvalidParams("candidate must be below q".into()));
    }
    check_points(shares, &params.q)?;
    let mut points: Vec<(BigUint, BigUint)> = vec![(BigUint::zero(), candidate.clone())];
    points.extend(shares.iter().map(|s| (s.x.clone(), s.y.clone())));
    // with fewer than t-1 shares, pin the remaining freedom with arbitrary points
    let mut extra = BigUint::from(params.n + 1);
    while points.len() < params.t {
        if shares.iter().all(|s| s.x != extra) {
            points.push((extra.clone(), BigUint::zero()));
        }
        extra += 1u32;
    }
    let mut coeffs = interpolate(&points, &params.q);
    coeffs.resize(params.t, BigUint::zero());
    Ok(coeffs)
}

/// Evaluates ascending coefficients at `x` over GF(q).
pub fn eval_field_poly(coeffs: &[BigUint], x: &BigUint, q: &BigUint) -> BigUint {
    eval_mod(coeffs, x, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, t: usize, q: u64) -> ThresholdParams {
        ThresholdParams::new(n, t, BigUint::from(q)).unwrap()
    }

    #[test]
    fn threshold_one_copies_secret() {
        let p = params(3, 1, 257);
        let shares = shamir_split(&BigUint::from(42u32), &p, b"s").unwrap();
        assert!(shares.iter().all(|s| s.y == BigUint::from(42u32)));
        assert_eq!(
            shamir_reconstruct(&shares[1..2], &p).unwrap(),
            BigUint::from(42u32)
        );
    }

    #[test]
    fn any_pair_reconstructs() {
        let p = params(3, 2, 257);
        let shares = shamir_split(&BigUint::from(42u32), &p, &[7]).unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 2), (2, 0)] {
            let pair = [shares[i].clone(), shares[j].clone()];
            assert_eq!(shamir_reconstruct(&pair, &p).unwrap(), BigUint::from(42u32));
        }
    }

    #[test]
    fn error_paths() {
        let p = params(3, 2, 257);
        assert!(matches!(
            shamir_split(&BigUint::from(300u32), &p, b""),
            Err(ShamirError::InvalidParams(_))
        ));
        let shares = shamir_split(&BigUint::from(42u32), &p, b"").unwrap();
        assert_eq!(
            shamir_reconstruct(&shares[..1], &p),
            Err(ShamirError::NotEnoughShares { needed: 2, got: 1 })
        );
        let dup = [shares[0].clone(), shares[0].clone()];
        assert_eq!(
            shamir_reconstruct(&dup, &p),
            Err(ShamirError::DuplicateX(BigUint::one()))
        );
        assert!(ThresholdParams::new(3, 4, BigUint::from(257u32)).is_err());
        assert!(ThresholdParams::new(3, 0, BigUint::from(257u32)).is_err());
        assert!(ThresholdParams::new(3, 2, BigUint::from(256u32)).is_err());
        assert!(ThresholdParams::new(300, 2, BigUint::from(257u32)).is_err());
    }

    #[test]
    fn interpolation_recovers_known_polynomial() {
        let q = BigUint::from(257u32);
        let coeffs: Vec<BigUint> = [5u32, 7, 11].iter().map(|&c| BigUint::from(c)).collect();
        let points: Vec<_> = (1u32..=3)
            .map(|x| {
                let x = BigUint::from(x);
                let y = eval_mod(&coeffs, &x, &q);
                (x, y)
            })
            .collect();
        assert_eq!(interpolate(&points, &q), coeffs);
    }

    #[test]
    fn consistent_polynomial_hits_candidate() {
        let p = params(5, 3, 257);
        let shares = shamir_split(&BigUint::from(99u32), &p, b"k").unwrap();
        for cand in [0u32, 1, 99, 256] {
            let cand = BigUint::from(cand);
            let coeffs = consistent_polynomial(&shares[..2], &cand, &p).unwrap();
            assert_eq!(coeffs.len(), 3);
            assert_eq!(coeffs[0], cand);
            for s in &shares[..2] {
                assert_eq!(eval_field_poly(&coeffs, &s.x, &p.q), s.y);
            }
        }
        assert!(consistent_polynomial(&shares[..3], &BigUint::one(), &p).is_err());
    }

    #[test]
    fn share_file_format() {
        let p = params(3, 2, 257);
        let s = ThresholdShare {
            x: BigUint::one(),
            y: BigUint::from(117u32),
        };
        let f = ThresholdShareFile::new(&s, &p);
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"x":"1","y":"117","q":"257","t":2}"#
        );
        assert_eq!(f.parse().unwrap(), (s, BigUint::from(257u32), 2));
    }
}
