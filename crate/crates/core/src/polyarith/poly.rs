use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense integer polynomial, coefficients in ascending degree.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// no coefficients and every other polynomial has a nonzero leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Clears denominators of a rational coefficient list, yielding a
    /// positive multiple of the rational polynomial.
    pub fn from_rationals(coeffs: &[BigRational]) -> Self {
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        Self::new(
            coeffs
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        )
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(One::is_one)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Horner evaluation. Returns the value together with the number of
    /// multiplications performed, which is exactly the degree.
    pub fn eval_counted(&self, x: &BigInt) -> (BigInt, usize) {
        let mut iter = self.coeffs.iter().rev();
        let Some(lead) = iter.next() else {
            return (BigInt::zero(), 0);
        };
        let mut acc = lead.clone();
        let mut mults = 0;
        for c in iter {
            acc *= x;
            acc += c;
            mults += 1;
        }
        (acc, mults)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.eval_counted(x).0
    }

    /// Exact value at a rational point.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let (num, den) = self.eval_homogeneous(x);
        BigRational::new(num, den)
    }

    /// Sign of the value at a rational point, without forming the fraction.
    pub fn sign_at(&self, x: &BigRational) -> Sign {
        self.eval_homogeneous(x).0.sign()
    }

    // Returns (N, d^deg) with p(n/d) = N / d^deg. Denominators of
    // BigRational are always positive, so sign(N) = sign(p(x)).
    fn eval_homogeneous(&self, x: &BigRational) -> (BigInt, BigInt) {
        let (n, d) = (x.numer(), x.denom());
        let mut iter = self.coeffs.iter().rev();
        let Some(lead) = iter.next() else {
            return (BigInt::zero(), BigInt::one());
        };
        let mut acc = lead.clone();
        let mut dpow = BigInt::one();
        for c in iter {
            dpow *= d;
            acc = acc * n + c * &dpow;
        }
        (acc, dpow)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Gcd of the coefficients, always non-negative.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content. The sign of the polynomial is preserved.
    pub fn primitive_part(&self) -> Polynomial {
        let content = self.content();
        if content.is_zero() || content.is_one() {
            return self.clone();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c / &content).collect(),
        }
    }

    pub fn negated(&self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scaled(&self, k: &BigInt) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.negated())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Pseudo-remainder: returns `r` with `lc(d)^(deg self - deg d + 1) * self = q*d + r`
    /// and `deg r < deg d`. Panics if `d` is zero.
    pub fn pseudo_rem(&self, d: &Polynomial) -> Polynomial {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let lead = d.leading_coefficient().unwrap();
        let mut r = self.coeffs.clone();
        let Some(rd) = self.degree() else {
            return Polynomial::zero();
        };
        if rd < dd {
            return self.clone();
        }
        let steps = rd - dd + 1;
        let mut applied = 0;
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let t = r[top].clone();
            for c in r.iter_mut() {
                *c *= lead;
            }
            let shift = top - dd;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[shift + j] -= &t * dc;
            }
            applied += 1;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        // top up the multiplier so the identity holds with the full exponent
        let mut rem = Polynomial::new(r);
        for _ in applied..steps {
            rem = rem.scaled(lead);
        }
        rem
    }

    /// Bound `B` such that every real root `x` satisfies `|x| < B`
    /// (a power of two). Zero polynomial gives 1.
    pub fn root_bound(&self) -> BigInt {
        let Some(d) = self.degree() else {
            return BigInt::one();
        };
        // Fujiwara: |z| <= 2 max_i |a_{d-i} / a_d|^(1/i), rounded up to a
        // power of two from bit lengths
        let lead_bits = self.coeffs[d].bits() as i64;
        let mut e = 0u64;
        for i in 1..=d {
            let c = &self.coeffs[d - i];
            if c.is_zero() {
                continue;
            }
            let ratio_bits = (c.bits() as i64 - lead_bits + 1).max(0) as u64;
            e = e.max(ratio_bits.div_ceil(i as u64));
        }
        BigInt::one() << (e + 2)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Expands `∏(x - root) + constant_offset`.
///
/// With no roots there is no product term and the result is the constant
/// polynomial `constant_offset`.
pub fn poly_from_roots(roots: &[BigInt], constant_offset: &BigInt) -> Polynomial {
    if roots.is_empty() {
        return Polynomial::constant(constant_offset.clone());
    }
    let mut coeffs = vec![BigInt::one()];
    for root in roots {
        // multiply by (x - root) in place
        coeffs.push(BigInt::zero());
        for i in (0..coeffs.len()).rev() {
            let lower = if i > 0 { coeffs[i - 1].clone() } else { BigInt::zero() };
            coeffs[i] = lower - &coeffs[i] * root;
        }
    }
    coeffs[0] += constant_offset;
    Polynomial::new(coeffs)
}

pub fn poly_eval(p: &Polynomial, x: &BigInt) -> BigInt {
    p.eval(x)
}

pub fn poly_derivative(p: &Polynomial) -> Polynomial {
    p.derivative()
}
