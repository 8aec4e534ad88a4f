use proptest::prelude::*;

use super::*;
use crate::expr::{ratio, Branch, Domain, Expr, RealInterval};
use crate::interval::{Dyadic, DyadicInterval};

fn bisect_f64(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (f(m) < 0.0) == (fa < 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn minus_e_minus_2(prec: u32) -> DyadicInterval {
    DyadicInterval::point(Dyadic::from_int(-2), prec).exp().neg()
}

fn back_substitute(w: &DyadicInterval, z: &DyadicInterval) -> DyadicInterval {
    w.mul(&w.exp()).sub(z)
}

#[test]
fn w0_at_zero_is_zero() {
    let w = lambert_w(Branch::Principal, &DyadicInterval::point_int(0), 64).unwrap();
    assert!(w.is_point());
    assert!(w.contains_rational(&ratio(0, 1)));
}

#[test]
fn w_minus_one_at_branch_point() {
    let z = neg_inv_e(128);
    let w = lambert_w(Branch::Lower, &z, 128).unwrap();
    assert!(w.contains_rational(&ratio(-1, 1)));
    assert!(w.width_f64() < 1e-15);
    let w0 = lambert_w(Branch::Principal, &z, 128).unwrap();
    assert!(w0.contains_rational(&ratio(-1, 1)));
}

#[test]
fn both_branches_at_minus_e_minus_two() {
    let z = minus_e_minus_2(96);
    let c = (-2f64).exp();
    let f = |w: f64| w * w.exp() + c;
    let w0 = lambert_w(Branch::Principal, &z, 96).unwrap();
    let wm = lambert_w(Branch::Lower, &z, 96).unwrap();
    let o0 = bisect_f64(f, -1.0, 0.0);
    let om = bisect_f64(f, -4.0, -1.0);
    assert!((w0.midpoint().unwrap().to_f64() - o0).abs() < 1e-12);
    assert!((wm.midpoint().unwrap().to_f64() - om).abs() < 1e-12);
    assert!((o0 + 0.15859).abs() < 1e-5);
    assert!((om + 3.14619).abs() < 1e-5);
    assert!(back_substitute(&w0, &z).contains_zero());
    assert!(back_substitute(&wm, &z).contains_zero());
}

#[test]
fn out_of_branch_domain() {
    assert_eq!(
        lambert_w(Branch::Principal, &DyadicInterval::point_int(-1), 64),
        Err(SpecialError::OutOfBranchDomain)
    );
    assert_eq!(
        lambert_w(Branch::Lower, &DyadicInterval::point_int(1), 64),
        Err(SpecialError::OutOfBranchDomain)
    );
}

#[test]
fn large_arguments() {
    for n in [10i64, 1000, 1_000_000] {
        let z = DyadicInterval::point_int(n);
        let w = lambert_w(Branch::Principal, &z, 80).unwrap();
        assert!(back_substitute(&w, &z).contains_zero());
        assert!(w.width_f64() < 1e-18);
    }
    let z = DyadicInterval::point(Dyadic::pow2(-40).neg(), 80);
    let w = lambert_w(Branch::Lower, &z, 80).unwrap();
    assert!(back_substitute(&w, &z).contains_zero());
}

#[test]
fn branch_point_comparison() {
    use std::cmp::Ordering;
    assert_eq!(cmp_branch_point(&ratio(-1, 2)), Ordering::Less);
    assert_eq!(cmp_branch_point(&ratio(-1, 3)), Ordering::Greater);
    assert_eq!(cmp_branch_point(&ratio(-3678795, 10000000)), Ordering::Less);
    assert_eq!(cmp_branch_point(&ratio(-3678794, 10000001)), Ordering::Greater);
}

fn ray(a: i64, closed: bool) -> Domain {
    Domain::from_interval(RealInterval::from_lower(ratio(a, 1), closed))
}

#[test]
fn quintic_inverse_value() {
    let p = Expr::x().pow(5) - Expr::x() - Expr::int(1);
    let v = InverseFunctionValue::new(p, ray(1, false), Expr::int(0)).unwrap();
    let enc = inverse_value(&v, 64).unwrap();
    let oracle = bisect_f64(|x| x.powi(5) - x - 1.0, 1.0, 2.0);
    assert!(enc.width_f64() < 1e-15);
    assert!((enc.midpoint().unwrap().to_f64() - oracle).abs() < 1e-12);
    assert!((oracle - 1.1673039783).abs() < 1e-10);
}

#[test]
fn exp_inverse_is_ln() {
    let v = InverseFunctionValue::new(Expr::x().exp(), Domain::real_line(), Expr::ratio(1, 2)).unwrap();
    let enc = inverse_value(&v, 64).unwrap();
    let series: f64 = -(1..60).map(|k| 1.0 / (k as f64 * 2f64.powi(k))).sum::<f64>();
    assert!((enc.midpoint().unwrap().to_f64() - series).abs() < 1e-14);
}

#[test]
fn identity_inverse_is_exact() {
    let v = InverseFunctionValue::new(Expr::x(), Domain::real_line(), Expr::int(7)).unwrap();
    let enc = inverse_value(&v, 64).unwrap();
    assert!(enc.is_point());
    assert!(enc.contains_rational(&ratio(7, 1)));
}

#[test]
fn inverse_value_rejects_unreachable_target() {
    let f = Expr::x().sqrt() + (Expr::int(2) * Expr::x() + Expr::int(1)).sqrt();
    let v = InverseFunctionValue::new(f, ray(0, true), Expr::ratio(1, 2)).unwrap();
    assert_eq!(inverse_value(&v, 64), Err(SpecialError::TargetOutsideRange));
}

#[test]
fn non_monotone_function_is_refused() {
    let r = InverseFunctionValue::new(Expr::x().pow(2), Domain::real_line(), Expr::int(1));
    assert_eq!(r, Err(SpecialError::NotMonotone));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn defining_identity_principal(num in -367i64..5000) {
        let z = DyadicInterval::from_rational(&ratio(num, 1000), 72);
        let w = lambert_w(Branch::Principal, &z, 72).unwrap();
        let r = back_substitute(&w, &z);
        prop_assert!(r.contains_zero());
        prop_assert!(w.lower().unwrap() >= &Dyadic::from_int(-1));
    }

    #[test]
    fn defining_identity_lower(num in -367i64..-1) {
        let z = DyadicInterval::from_rational(&ratio(num, 1000), 72);
        let w = lambert_w(Branch::Lower, &z, 72).unwrap();
        prop_assert!(back_substitute(&w, &z).contains_zero());
        prop_assert!(w.upper().unwrap() <= &Dyadic::from_int(-1));
    }

    #[test]
    fn inverse_back_substitution(target in -50i64..50) {
        let p = Expr::x().pow(3) + Expr::x();
        let v = InverseFunctionValue::new(p.clone(), Domain::real_line(), Expr::int(target)).unwrap();
        let enc = inverse_value(&v, 48).unwrap();
        let r = crate::interval::eval_interval(&(p - Expr::int(target)), &enc, 96).unwrap();
        prop_assert!(r.contains_zero());
    }
}
