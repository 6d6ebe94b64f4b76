use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::AttackError;
use crate::polyarith::Polynomial;

/// A point on the extended rational line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Bound::Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Bound::Finite(_))
    }

    pub fn neg(&self) -> Bound {
        match self {
            Bound::NegInf => Bound::PosInf,
            Bound::PosInf => Bound::NegInf,
            Bound::Finite(x) => Bound::Finite(-x),
        }
    }

    /// `"-inf"`, `"+inf"`, or the reduced fraction `"p/q"` (`"p"` when q = 1).
    pub fn parse(s: &str) -> Option<Bound> {
        match s.trim() {
            "-inf" => Some(Bound::NegInf),
            "+inf" | "inf" => Some(Bound::PosInf),
            other => parse_rational(other).map(Bound::Finite),
        }
    }
}

impl From<BigRational> for Bound {
    fn from(x: BigRational) -> Self {
        Bound::Finite(x)
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        use Bound::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::PosInf => write!(f, "+inf"),
            Bound::Finite(x) => write!(f, "{x}"),
        }
    }
}

/// Parses `"p/q"`, `"p"`, plain decimals like `"0.001"`, and `"1e-9"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().ok()? / 10;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        value = -value;
    }
    Some(value)
}

/// Sturm sequence of a polynomial: `p, p', -rem(p, p'), ...`.
///
/// Terms are stored as primitive integer polynomials; each is a positive
/// multiple of the corresponding rational remainder, which leaves every sign
/// unchanged. Counting divides through by the last term, the gcd of `p` and
/// `p'`, so repeated roots are counted once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    terms: Vec<Polynomial>,
    reduced: Vec<Polynomial>,
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Result<Self, AttackError> {
        if p.is_zero() {
            return Err(AttackError::ZeroPolynomial);
        }
        let mut terms = vec![p.primitive_part()];
        let d = p.derivative();
        if !d.is_zero() {
            terms.push(d.primitive_part());
        }
        while terms.len() >= 2 {
            let a = &terms[terms.len() - 2];
            let b = &terms[terms.len() - 1];
            let prem = a.pseudo_rem(b);
            if prem.is_zero() {
                break;
            }
            let lc_negative = b.leading_coefficient().unwrap().is_negative();
            let exponent = a.degree().unwrap() - b.degree().unwrap() + 1;
            // -rem = -prem / lc^e
            let flip = !(lc_negative && exponent % 2 == 1);
            let next = if flip { prem.negated() } else { prem };
            terms.push(next.primitive_part());
        }
        let gcd = terms.last().unwrap().clone();
        let reduced = terms
            .iter()
            .map(|t| exact_div(t, &gcd).expect("chain term divisible by the gcd"))
            .collect();
        Ok(SturmChain { terms, reduced })
    }

    pub fn terms(&self) -> &[Polynomial] {
        &self.terms
    }

    /// `p` with repeated roots collapsed: same real roots, all simple.
    pub fn square_free(&self) -> &Polynomial {
        &self.reduced[0]
    }

    pub fn variations(&self, at: &Bound) -> usize {
        let mut last = Sign::NoSign;
        let mut changes = 0;
        for t in &self.reduced {
            let s = sign_at_bound(t, at);
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> Result<usize, AttackError> {
        if lo >= hi {
            return Err(AttackError::EmptyInterval);
        }
        Ok(self.variations(lo).saturating_sub(self.variations(hi)))
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &Polynomial, lo: &Bound, hi: &Bound) -> Result<usize, AttackError> {
    SturmChain::new(p)?.count(lo, hi)
}

pub(crate) fn sign_at_bound(p: &Polynomial, at: &Bound) -> Sign {
    let Some(lc) = p.leading_coefficient() else {
        return Sign::NoSign;
    };
    match at {
        Bound::Finite(x) => p.sign_at(x),
        Bound::PosInf => lc.sign(),
        Bound::NegInf => {
            if p.degree().unwrap().is_multiple_of(2) {
                lc.sign()
            } else {
                -lc.sign()
            }
        }
    }
}

/// Exact division in Z[x]; `None` when `d` does not divide `p`.
fn exact_div(p: &Polynomial, d: &Polynomial) -> Option<Polynomial> {
    let dd = d.degree()?;
    let lead = d.leading_coefficient()?;
    let mut rem: Vec<BigInt> = p.coefficients().to_vec();
    if rem.len() < dd + 1 {
        return rem.is_empty().then(Polynomial::zero);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let top = &rem[i + dd];
        if (top % lead) != BigInt::zero() {
            return None;
        }
        let t = top / lead;
        for (j, c) in d.coefficients().iter().enumerate() {
            rem[i + j] -= &t * c;
        }
        quot[i] = t;
    }
    rem.iter().all(Zero::is_zero).then(|| Polynomial::new(quot))
}
