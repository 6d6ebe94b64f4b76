//! The shift-range attacker.
//!
//! From the public polynomial alone, an attacker knows that `y(x) - S` has k
//! distinct real roots (the characteristic numbers). Shifting `y` vertically
//! by δ keeps k distinct real roots only while every local maximum stays
//! above zero and every local minimum below it, so the admissible shifts form
//! an interval `(δ1, δ2)` and the secret lies in `(-δ2, -δ1)`. This module
//! computes that interval with exact rational arithmetic and reports how much
//! it gives away.

mod critical;
mod sturm;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyarith::Polynomial;
use crate::scheme::PublicPolynomial;

pub use critical::{critical_values, CriticalKind, CriticalValue, RatInterval};
pub use sturm::{parse_rational, sturm_count, Bound, SturmChain};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AttackError {
    #[error("zero polynomial has no Sturm sequence")]
    ZeroPolynomial,
    #[error("interval is empty: lower end must be below upper end")]
    EmptyInterval,
    #[error("precision must be a positive rational")]
    BadPrecision,
    #[error("polynomial has degree zero")]
    DegreeZero,
    #[error("no vertical shift gives {0} distinct real roots")]
    NoFeasibleShift(usize),
}

/// The attacker's admissible shifts and the secret range they imply.
///
/// `delta1`/`delta2` are reported conservatively: when a critical value is
/// irrational, the returned secret interval is the outer edge of its
/// enclosure, so it always contains the true interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaInterval {
    pub delta1: Bound,
    pub delta2: Bound,
    /// Enclosure of the smallest local maximum of `y` (absent when `y` has none).
    pub lowest_maximum: Option<RatInterval>,
    /// Enclosure of the largest local minimum of `y` (absent when `y` has none).
    pub highest_minimum: Option<RatInterval>,
}

impl DeltaInterval {
    pub fn secret_low(&self) -> Bound {
        self.delta2.neg()
    }

    pub fn secret_high(&self) -> Bound {
        self.delta1.neg()
    }

    /// Open-interval membership test for a candidate secret.
    pub fn contains(&self, s: &BigRational) -> bool {
        let s = Bound::Finite(s.clone());
        self.secret_low() < s && s < self.secret_high()
    }

    /// `None` when either side is unbounded.
    pub fn width(&self) -> Option<BigRational> {
        match (self.secret_low(), self.secret_high()) {
            (Bound::Finite(lo), Bound::Finite(hi)) => Some(hi - lo),
            _ => None,
        }
    }

    /// Both finite endpoints are exact (no enclosure slack).
    pub fn is_exact(&self) -> bool {
        self.lowest_maximum.as_ref().is_none_or(RatInterval::is_point)
            && self.highest_minimum.as_ref().is_none_or(RatInterval::is_point)
    }
}

/// δ-range for a public polynomial.
pub fn delta_interval(
    public: &PublicPolynomial,
    precision: &BigRational,
) -> Result<DeltaInterval, AttackError> {
    delta_interval_for(public.poly(), precision)
}

/// δ-range for any polynomial of degree ≥ 1.
pub fn delta_interval_for(
    p: &Polynomial,
    precision: &BigRational,
) -> Result<DeltaInterval, AttackError> {
    let k = match p.degree() {
        None => return Err(AttackError::ZeroPolynomial),
        Some(0) => return Err(AttackError::DegreeZero),
        Some(k) => k,
    };
    let critical = critical_values(p, precision)?;
    if critical.len() != k - 1 || critical.iter().any(|c| c.kind == CriticalKind::Stationary) {
        return Err(AttackError::NoFeasibleShift(k));
    }
    let lowest_maximum = critical
        .iter()
        .filter(|c| c.kind == CriticalKind::Maximum)
        .map(|c| c.value.clone())
        .reduce(|a, b| RatInterval {
            lo: a.lo.min(b.lo),
            hi: a.hi.min(b.hi),
        });
    let highest_minimum = critical
        .iter()
        .filter(|c| c.kind == CriticalKind::Minimum)
        .map(|c| c.value.clone())
        .reduce(|a, b| RatInterval {
            lo: a.lo.max(b.lo),
            hi: a.hi.max(b.hi),
        });
    if let (Some(max), Some(min)) = (&lowest_maximum, &highest_minimum) {
        if max.hi <= min.lo {
            return Err(AttackError::NoFeasibleShift(k));
        }
    }
    // y + δ needs every maximum above zero and every minimum below it
    let delta1 = match &lowest_maximum {
        Some(m) => Bound::Finite(-m.hi.clone()),
        None => Bound::NegInf,
    };
    let delta2 = match &highest_minimum {
        Some(m) => Bound::Finite(-m.lo.clone()),
        None => Bound::PosInf,
    };
    Ok(DeltaInterval {
        delta1,
        delta2,
        lowest_maximum,
        highest_minimum,
    })
}

/// `y + δ` scaled to integer coefficients.
pub fn shifted(p: &Polynomial, delta: &BigRational) -> Polynomial {
    let den = delta.denom().clone();
    p.scaled(&den).add(&Polynomial::constant(delta.numer().clone()))
}

/// Facts about how the instance was dealt, for the hardening checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShareMeta {
    pub bit_length: Option<u64>,
    pub k: usize,
    pub n: Option<usize>,
    /// Bit lengths of the individual primes, when the shares are at hand.
    #[serde(default)]
    pub prime_bits: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HardeningConfig {
    /// Primes below this many bits get a warning.
    pub min_prime_bits: u64,
    /// Warn once k reaches this fraction of the subexponential cap.
    pub cap_warning_fraction: f64,
}

impl Default for HardeningConfig {
    fn default() -> Self {
        HardeningConfig {
            min_prime_bits: 128,
            cap_warning_fraction: 0.75,
        }
    }
}

/// Largest number of authorized sets considered efficient for n
/// participants: n·2^√n, which grows slower than any 2^(cn).
pub fn subexponential_cap(n: usize) -> f64 {
    n as f64 * 2f64.powf((n as f64).sqrt())
}

#[derive(Clone, Debug, PartialEq)]
pub struct HardeningReport {
    pub delta: DeltaInterval,
    pub warnings: Vec<String>,
}

impl HardeningReport {
    pub fn width(&self) -> Option<BigRational> {
        self.delta.width()
    }

    pub fn to_file(&self) -> AnalysisReportFile {
        AnalysisReportFile {
            delta1: self.delta.delta1.to_string(),
            delta2: self.delta.delta2.to_string(),
            secret_low: self.delta.secret_low().to_string(),
            secret_high: self.delta.secret_high().to_string(),
            width: match self.width() {
                Some(w) => w.to_string(),
                None => Bound::PosInf.to_string(),
            },
            warnings: self.warnings.clone(),
        }
    }
}

/// Report JSON. Rationals are `"p/q"` (or `"p"`), infinities `"-inf"`/`"+inf"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReportFile {
    pub delta1: String,
    pub delta2: String,
    pub secret_low: String,
    pub secret_high: String,
    pub width: String,
    pub warnings: Vec<String>,
}

fn approx(x: &BigRational) -> f64 {
    let n = x.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let d = x.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    n / d
}

pub fn hardening_report(
    public: &PublicPolynomial,
    meta: &ShareMeta,
    precision: &BigRational,
) -> Result<HardeningReport, AttackError> {
    hardening_report_with(public, meta, precision, &HardeningConfig::default())
}

pub fn hardening_report_with(
    public: &PublicPolynomial,
    meta: &ShareMeta,
    precision: &BigRational,
    config: &HardeningConfig,
) -> Result<HardeningReport, AttackError> {
    let delta = delta_interval(public, precision)?;
    let mut warnings = Vec::new();

    if !delta.secret_low().is_finite() {
        warnings.push("secret interval unbounded below (attack uninformative on this side)".into());
    }
    if !delta.secret_high().is_finite() {
        warnings.push("secret interval unbounded above (attack uninformative on this side)".into());
    }
    if let Some(w) = delta.width() {
        warnings.push(format!(
            "attacker confines the secret to an interval of width {w} (~{:.6e})",
            approx(&w)
        ));
    }

    if let Some(bits) = meta.bit_length {
        if bits < config.min_prime_bits {
            warnings.push(format!(
                "{bits}-bit primes are below the recommended {} bits",
                config.min_prime_bits
            ));
        }
    }
    if let (Some(min), Some(max)) = (meta.prime_bits.iter().min(), meta.prime_bits.iter().max()) {
        if min != max {
            warnings.push(format!(
                "primes are not of the same order: sizes range from {min} to {max} bits"
            ));
        }
    }

    let k = public.k();
    if meta.k != k {
        warnings.push(format!(
            "metadata k = {} disagrees with the public polynomial degree {k}",
            meta.k
        ));
    }
    if let Some(n) = meta.n {
        let cap = subexponential_cap(n);
        if k as f64 > cap {
            warnings.push(format!(
                "k = {k} authorized sets exceeds the subexponential cap {cap:.1} for n = {n}"
            ));
        } else if k as f64 >= config.cap_warning_fraction * cap {
            warnings.push(format!(
                "k = {k} authorized sets is approaching the subexponential cap {cap:.1} for n = {n}"
            ));
        }
    }
    Ok(HardeningReport { delta, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn public(c: &[i64]) -> PublicPolynomial {
        PublicPolynomial::new(Polynomial::from_i64s(c)).unwrap()
    }

    #[test]
    fn quadratic_instance() {
        let d = delta_interval(&public(&[132, -21, 1]), &r(1, 1_000_000)).unwrap();
        assert_eq!(d.delta2, Bound::Finite(r(-87, 4)));
        assert_eq!(d.delta1, Bound::NegInf);
        assert_eq!(d.secret_low(), Bound::Finite(r(87, 4)));
        assert_eq!(d.secret_high(), Bound::PosInf);
        assert!(d.contains(&r(42, 1)));
        assert!(d.is_exact());
        assert_eq!(d.width(), None);
    }

    #[test]
    fn linear_instance_learns_nothing() {
        // x - 7 + 3
        let d = delta_interval(&public(&[-4, 1]), &r(1, 1000)).unwrap();
        assert_eq!((d.delta1.clone(), d.delta2.clone()), (Bound::NegInf, Bound::PosInf));
        assert_eq!((d.secret_low(), d.secret_high()), (Bound::NegInf, Bound::PosInf));
    }

    #[test]
    fn cubic_instance() {
        let d = delta_interval(&public(&[-858, 300, -31, 1]), &r(1, 1_000_000_000)).unwrap();
        let lo = approx(d.secret_low().finite().unwrap());
        let hi = approx(d.secret_high().finite().unwrap());
        assert!((lo - -0.03149853557821615).abs() < 1e-6);
        assert!((hi - 70.55001705409674).abs() < 1e-6);
        assert!(d.contains(&r(42, 1)));
        assert!((approx(&d.width().unwrap()) - 70.5815155896).abs() < 1e-5);
    }

    #[test]
    fn infeasible_shapes_are_rejected() {
        // x^3 + 5: single stationary point, never three real roots
        assert_eq!(
            delta_interval(&public(&[5, 0, 0, 1]), &r(1, 100)),
            Err(AttackError::NoFeasibleShift(3))
        );
        // x^3 + x: no critical points at all
        assert_eq!(
            delta_interval(&public(&[0, 1, 0, 1]), &r(1, 100)),
            Err(AttackError::NoFeasibleShift(3))
        );
        assert_eq!(
            delta_interval_for(&Polynomial::from_i64s(&[3]), &r(1, 100)),
            Err(AttackError::DegreeZero)
        );
    }

    #[test]
    fn quartic_has_both_bounds() {
        // (x-1)(x-2)(x-3)(x-4): W shape, one maximum and two minima
        let p = crate::polyarith::poly_from_roots(
            &[1, 2, 3, 4].map(BigInt::from),
            &BigInt::from(0),
        );
        let d = delta_interval_for(&p, &r(1, 1_000_000)).unwrap();
        assert!(d.delta1.is_finite() && d.delta2.is_finite());
        assert!(d.contains(&r(0, 1)));
        // the maximum sits exactly at 5/2 with value 9/16
        assert_eq!(d.lowest_maximum, Some(RatInterval::point(r(9, 16))));
    }

    #[test]
    fn exact_boundary_loses_a_root() {
        let p = Polynomial::from_i64s(&[132, -21, 1]);
        let d = delta_interval_for(&p, &r(1, 1000)).unwrap();
        let at = shifted(&p, d.delta2.finite().unwrap());
        assert_eq!(sturm_count(&at, &Bound::NegInf, &Bound::PosInf).unwrap(), 1);
        let inside = shifted(&p, &(d.delta2.finite().unwrap() - r(1, 1000)));
        assert_eq!(sturm_count(&inside, &Bound::NegInf, &Bound::PosInf).unwrap(), 2);
    }

    #[test]
    fn report_examples() {
        let meta = ShareMeta {
            bit_length: Some(256),
            k: 2,
            n: Some(3),
            prime_bits: vec![256, 256, 256],
        };
        let rep = hardening_report(&public(&[132, -21, 1]), &meta, &r(1, 1000)).unwrap();
        let file = rep.to_file();
        assert_eq!(file.delta1, "-inf");
        assert_eq!(file.delta2, "-87/4");
        assert_eq!(file.secret_low, "87/4");
        assert_eq!(file.secret_high, "+inf");
        assert_eq!(file.width, "+inf");
        assert_eq!(
            file.warnings,
            ["secret interval unbounded above (attack uninformative on this side)"]
        );

        let line = hardening_report(
            &public(&[-4, 1]),
            &ShareMeta { k: 1, ..Default::default() },
            &r(1, 1000),
        )
        .unwrap();
        assert_eq!(line.width(), None);
        assert_eq!(line.warnings.len(), 2);

        let cubic_meta = ShareMeta {
            bit_length: Some(16),
            k: 3,
            n: Some(3),
            prime_bits: vec![2, 3, 3],
        };
        let cubic = hardening_report(&public(&[-858, 300, -31, 1]), &cubic_meta, &r(1, 1_000_000))
            .unwrap();
        assert!((approx(&cubic.width().unwrap()) - 70.58).abs() < 0.01);
        let text = cubic.warnings.join("\n");
        assert!(text.contains("width"));
        assert!(text.contains("below the recommended"));
        assert!(text.contains("not of the same order"));
    }

    #[test]
    fn cap_warning() {
        let meta = ShareMeta {
            bit_length: Some(256),
            k: 3,
            n: Some(1),
            prime_bits: vec![],
        };
        let rep = hardening_report(&public(&[-858, 300, -31, 1]), &meta, &r(1, 1000)).unwrap();
        assert!(rep.warnings.iter().any(|w| w.contains("exceeds the subexponential cap")));
        assert!(subexponential_cap(16) > 16.0 * 15.0);
    }
}
