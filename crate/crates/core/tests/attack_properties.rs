mod common;

use gsss::attack::{delta_interval, sturm_count, Bound, SturmChain};
use gsss::polyarith::poly_from_roots;
use gsss::{BigInt, BigRational, Polynomial};
use num_traits::One;
use proptest::prelude::*;

use common::{random_instances, to_f64};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn fin(n: i64, d: i64) -> Bound {
    Bound::Finite(rat(n, d))
}

#[test]
fn dealt_secrets_lie_inside_the_interval() {
    let precision = rat(1, 1_000_000_000);
    let mut checked = 0;
    for inst in random_instances(160, b"containment") {
        if inst.structure.k() < 2 {
            continue;
        }
        let d = delta_interval(&inst.dealing.public, &precision).unwrap();
        let s = BigRational::from_integer(BigInt::from(inst.secret.value().clone()));
        assert!(d.contains(&s), "secret {s} outside {d:?}");
        checked += 1;
    }
    assert!(checked >= 100, "only {checked} instances with k >= 2");
}

#[test]
fn refinement_never_widens() {
    for inst in random_instances(40, b"refine") {
        if inst.structure.k() < 3 {
            continue;
        }
        let mut prev = None;
        for e in [2, 4, 8, 12] {
            let d = delta_interval(&inst.dealing.public, &rat(1, 10i64.pow(e))).unwrap();
            if let Some((lo, hi)) = prev {
                assert!(d.secret_low() >= lo);
                assert!(d.secret_high() <= hi);
            }
            prev = Some((d.secret_low(), d.secret_high()));
        }
    }
}

#[test]
fn cubic_endpoints_match_reference() {
    // (x - 6)(x - 10)(x - 15) + 42
    let y = poly_from_roots(&[BigInt::from(6), BigInt::from(10), BigInt::from(15)], &BigInt::from(42));
    let public = gsss::PublicPolynomial::new(y).unwrap();
    let d = delta_interval(&public, &rat(1, 1_000_000_000)).unwrap();
    let lo = to_f64(d.secret_low().finite().unwrap());
    let hi = to_f64(d.secret_high().finite().unwrap());
    // floating-point values of y at the roots of y' = 3x^2 - 62x + 300
    let disc = (62.0f64 * 62.0 - 12.0 * 300.0).sqrt();
    let y_f = |x: f64| (x - 6.0) * (x - 10.0) * (x - 15.0) + 42.0;
    let local_max = y_f((62.0 - disc) / 6.0);
    let local_min = y_f((62.0 + disc) / 6.0);
    assert!((hi - local_max).abs() < 1e-6, "{hi} vs {local_max}");
    assert!((lo - local_min).abs() < 1e-6, "{lo} vs {local_min}");
    assert!(d.contains(&rat(42, 1)));
}

#[test]
fn quadratic_interval_is_exact() {
    let public = gsss::PublicPolynomial::new(Polynomial::from_i64s(&[132, -21, 1])).unwrap();
    let d = delta_interval(&public, &rat(1, 1000)).unwrap();
    assert_eq!(d.delta1, Bound::NegInf);
    assert_eq!(d.delta2, fin(-87, 4));
    assert!(d.is_exact());
}

#[test]
fn counting_excludes_lower_and_includes_upper_endpoint() {
    // (x - 1)(x - 2)(x - 3)
    let p = Polynomial::from_i64s(&[-6, 11, -6, 1]);
    assert_eq!(sturm_count(&p, &fin(1, 1), &fin(3, 1)).unwrap(), 2);
    assert_eq!(sturm_count(&p, &fin(0, 1), &fin(1, 1)).unwrap(), 1);
    assert_eq!(sturm_count(&p, &fin(1, 1), &fin(2, 1)).unwrap(), 1);
    assert_eq!(sturm_count(&p, &fin(3, 1), &Bound::PosInf).unwrap(), 0);
    assert_eq!(sturm_count(&p, &Bound::NegInf, &Bound::PosInf).unwrap(), 3);
    assert!(sturm_count(&p, &fin(2, 1), &fin(2, 1)).is_err());
}

/// Product of (den·x - num) over the given rational roots, times x² + c.
fn build(roots: &[(i64, i64)], c: i64) -> Polynomial {
    let mut p = Polynomial::from_i64s(&[c, 0, 1]);
    for &(num, den) in roots {
        p = p.mul(&Polynomial::from_i64s(&[-num, den]));
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn counts_match_constructed_roots(
        roots in prop::collection::vec((-1000i64..=1000, 1i64..=3), 1..=6),
        c in 1i64..50,
        lo in -1100i64..1100,
        span in 1i64..2200,
    ) {
        let p = build(&roots, c);
        let hi = lo + span;
        let mut distinct: Vec<BigRational> = roots.iter().map(|&(n, d)| rat(n, d)).collect();
        distinct.sort();
        distinct.dedup();
        let (l, h) = (rat(lo, 1), rat(hi, 1));
        let expected = distinct.iter().filter(|r| **r > l && **r <= h).count();
        prop_assert_eq!(sturm_count(&p, &fin(lo, 1), &fin(hi, 1)).unwrap(), expected);
        let chain = SturmChain::new(&p).unwrap();
        prop_assert_eq!(chain.count(&Bound::NegInf, &Bound::PosInf).unwrap(), distinct.len());
    }

    #[test]
    fn counts_match_grid_sign_changes(
        roots in prop::collection::btree_set(-200i64..=200, 1..=8),
        shift in 1i64..4,
    ) {
        // simple roots at least 1 apart: a grid of step 1/4 sees exactly
        // one sign change per root
        let rs: Vec<(i64, i64)> = roots.iter().map(|&r| (r * shift + 1, shift)).collect();
        let mut p = Polynomial::constant(BigInt::one());
        for &(n, d) in &rs {
            p = p.mul(&Polynomial::from_i64s(&[-n, d]));
        }
        let (lo, hi) = (-210i64, 210i64);
        let mut changes = 0;
        let mut prev = p.sign_at(&rat(lo, 1));
        let mut x = rat(lo, 1);
        let step = rat(1, 4);
        while x < rat(hi, 1) {
            x += &step;
            let s = p.sign_at(&x);
            if s != num_bigint::Sign::NoSign && prev != num_bigint::Sign::NoSign && s != prev {
                changes += 1;
            }
            if s != num_bigint::Sign::NoSign {
                prev = s;
            }
        }
        prop_assert_eq!(sturm_count(&p, &fin(lo, 1), &fin(hi, 1)).unwrap(), changes);
    }
}
