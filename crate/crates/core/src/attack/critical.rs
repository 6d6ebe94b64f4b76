use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::sturm::{Bound, SturmChain};
use super::AttackError;
use crate::polyarith::Polynomial;

/// Closed rational interval `[lo, hi]`; a point when `lo == hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn point(x: BigRational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &RatInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    fn intersect(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: (&self.lo).max(&other.lo).clone(),
            hi: (&self.hi).min(&other.hi).clone(),
        }
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalKind {
    Maximum,
    Minimum,
    /// p' touches zero without changing sign: not an extremum.
    Stationary,
}

/// A real root of `p'` and the value of `p` there, both enclosed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalValue {
    pub location: RatInterval,
    pub value: RatInterval,
    pub kind: CriticalKind,
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

fn abs_bound(p: &Polynomial, radius: &BigRational) -> BigRational {
    // Σ |a_i| R^i bounds |p(x)| for |x| <= R
    p.coefficients()
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| {
            acc * radius + BigRational::from_integer(c.abs())
        })
}

struct Isolator<'a> {
    p: &'a Polynomial,
    dp: &'a Polynomial,
    ddp: Polynomial,
    chain: SturmChain,
    // denominators of rational roots of dp divide this
    lead: BigInt,
    precision: BigRational,
}

impl Isolator<'_> {
    fn sf_sign(&self, x: &BigRational) -> Sign {
        self.chain.square_free().sign_at(x)
    }

    fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.chain
            .count(&Bound::Finite(lo.clone()), &Bound::Finite(hi.clone()))
            .expect("lo < hi")
    }

    fn exact(&self, x: BigRational) -> CriticalValue {
        let kind = self.classify_exact(&x);
        let v = self.p.eval_rational(&x);
        CriticalValue {
            location: RatInterval::point(x),
            value: RatInterval::point(v),
            kind,
        }
    }

    // Kind of an exact root x of p': compare signs of p' on nearby non-roots.
    fn classify_exact(&self, x: &BigRational) -> CriticalKind {
        let mut eps = BigRational::one();
        loop {
            let (l, r) = (x - &eps, x + &eps);
            let clean = self.sf_sign(&l) != Sign::NoSign
                && self.sf_sign(&r) != Sign::NoSign
                && self.count(&l, &r) == 1;
            if clean {
                return kind_from_signs(self.dp.sign_at(&l), self.dp.sign_at(&r));
            }
            eps /= two();
        }
    }

    fn enclose_value(&self, lo: &BigRational, hi: &BigRational, kind: CriticalKind) -> RatInterval {
        let pl = self.p.eval_rational(lo);
        let ph = self.p.eval_rational(hi);
        let (small, large) = if pl <= ph { (pl, ph) } else { (ph, pl) };
        let w = hi - lo;
        let radius = lo.abs().max(hi.abs());
        let slope = self.dp.eval_rational(lo).abs().max(self.dp.eval_rational(hi).abs())
            + &w * abs_bound(&self.ddp, &radius);
        let reach = &w * slope;
        match kind {
            CriticalKind::Maximum => RatInterval {
                lo: large,
                hi: small + reach,
            },
            CriticalKind::Minimum => RatInterval {
                lo: large - reach,
                hi: small,
            },
            CriticalKind::Stationary => RatInterval { lo: small, hi: large },
        }
    }

    // (lo, hi) holds exactly one root of p'; neither endpoint is a root.
    //
    // Value enclosures are intersected at every step of width <= 1, and the
    // loop always reaches that width, so a smaller precision only adds
    // intersections: results are nested.
    fn refine(&self, mut lo: BigRational, mut hi: BigRational) -> CriticalValue {
        let kind = kind_from_signs(self.dp.sign_at(&lo), self.dp.sign_at(&hi));
        let exactness_width = BigRational::new(BigInt::one(), &self.lead * 2);
        let one = BigRational::one();
        let mut checked_candidate = false;
        let mut value: Option<RatInterval> = None;
        loop {
            let w = &hi - &lo;
            if w <= one {
                let step = self.enclose_value(&lo, &hi, kind);
                value = Some(match value {
                    Some(v) => v.intersect(&step),
                    None => step,
                });
            }
            if !checked_candidate && w < exactness_width {
                checked_candidate = true;
                // a rational root m/L is the only multiple of 1/L in (lo, hi)
                let scaled_hi = &hi * BigRational::from_integer(self.lead.clone());
                let m = scaled_hi.floor();
                let candidate = m / BigRational::from_integer(self.lead.clone());
                if candidate > lo && candidate < hi && self.sf_sign(&candidate) == Sign::NoSign {
                    return self.exact(candidate);
                }
            }
            if checked_candidate && w <= self.precision && w <= one {
                return CriticalValue {
                    location: RatInterval { lo, hi },
                    value: value.expect("enclosed once width <= 1"),
                    kind,
                };
            }
            let mid = (&lo + &hi) / two();
            let s_mid = self.sf_sign(&mid);
            if s_mid == Sign::NoSign {
                return self.exact(mid);
            }
            if s_mid == self.sf_sign(&lo) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    fn isolate(&self, lo: BigRational, hi: BigRational, count: usize, out: &mut Vec<CriticalValue>) {
        if count == 0 {
            return;
        }
        if count == 1 {
            out.push(self.refine(lo, hi));
            return;
        }
        let mid = (&lo + &hi) / two();
        if self.sf_sign(&mid) != Sign::NoSign {
            let left = self.count(&lo, &mid);
            self.isolate(lo, mid.clone(), left, out);
            self.isolate(mid, hi, count - left, out);
            return;
        }
        // mid is itself a root: step off it until the neighbourhood is clean
        let mut eps = (&hi - &lo) / BigRational::from_integer(BigInt::from(4));
        loop {
            let (l, r) = (&mid - &eps, &mid + &eps);
            if self.sf_sign(&l) != Sign::NoSign
                && self.sf_sign(&r) != Sign::NoSign
                && self.count(&l, &r) == 1
            {
                let left = self.count(&lo, &l);
                let right = self.count(&r, &hi);
                self.isolate(lo, l, left, out);
                out.push(self.exact(mid));
                self.isolate(r, hi, right, out);
                return;
            }
            eps /= two();
        }
    }
}

fn kind_from_signs(left: Sign, right: Sign) -> CriticalKind {
    match (left, right) {
        (Sign::Plus, Sign::Minus) => CriticalKind::Maximum,
        (Sign::Minus, Sign::Plus) => CriticalKind::Minimum,
        _ => CriticalKind::Stationary,
    }
}

/// Isolates every real root of `p'` to width at most `precision` and encloses
/// the value of `p` at each, in ascending order of location.
///
/// Rational roots of `p'` are always found exactly (zero-width intervals).
/// Value enclosures use only exact rational arithmetic. Refining with a
/// smaller `precision` continues the same bisection, so the reported
/// intervals are nested.
pub fn critical_values(
    p: &Polynomial,
    precision: &BigRational,
) -> Result<Vec<CriticalValue>, AttackError> {
    if !precision.is_positive() {
        return Err(AttackError::BadPrecision);
    }
    match p.degree() {
        None => return Err(AttackError::ZeroPolynomial),
        Some(d) if d < 2 => return Ok(Vec::new()),
        Some(_) => {}
    }
    let dp = p.derivative();
    let chain = SturmChain::new(&dp)?;
    let lead = chain.square_free().leading_coefficient().unwrap().abs();
    let iso = Isolator {
        p,
        ddp: dp.derivative(),
        dp: &dp,
        chain,
        lead,
        precision: precision.clone(),
    };
    let bound = BigRational::from_integer(iso.chain.square_free().root_bound());
    let total = iso.count(&-bound.clone(), &bound);
    let mut out = Vec::new();
    iso.isolate(-bound.clone(), bound, total, &mut out);
    Ok(out)
}
