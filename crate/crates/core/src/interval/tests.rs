use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

use super::*;
use crate::expr::{int, ratio, Expr, ExactEval};
use crate::parse::parse_expression;

fn ex(s: &str) -> Expr {
    parse_expression(s).unwrap()
}

fn at(r: Rational) -> DyadicInterval {
    DyadicInterval::from_rational(&r, 64)
}

fn decimal(s: &str) -> Rational {
    let (whole, frac) = s.split_once('.').unwrap();
    let digits: BigInt = format!("{whole}{frac}").parse().unwrap();
    Rational::new(digits, num_traits::pow(BigInt::from(10), frac.len()))
}

/// `Σ 1/k!` for k ≤ 40; the tail is below 1e-48.
fn e_oracle() -> Rational {
    let mut sum = Rational::zero();
    let mut fact = BigInt::one();
    for k in 0..=40u32 {
        if k > 0 {
            fact *= k;
        }
        sum += Rational::new(BigInt::one(), fact.clone());
    }
    sum
}

fn width_below(v: &DyadicInterval, bits: i64) -> bool {
    v.width().is_some_and(|w| w < Dyadic::pow2(-bits))
}

#[test]
fn exp_one_is_tight_around_e() {
    let v = eval_interval(&ex("exp(x)"), &DyadicInterval::point_int(1), 64).unwrap();
    let e = e_oracle();
    let slack = ratio(1, 1_000_000_000) * ratio(1, 1_000_000_000) * ratio(1, 1_000_000_000);
    assert!(v.lower_rational().unwrap() <= e.clone() + slack.clone());
    assert!(v.upper_rational().unwrap() >= e - slack);
    assert!(width_below(&v, 60));
}

#[test]
fn polynomial_at_integer_is_exact() {
    for p in [64, 128, 1024] {
        let v = eval_interval(&ex("x^5 - x - 1"), &DyadicInterval::point_int(1), p).unwrap();
        assert_eq!(v, DyadicInterval::point(Dyadic::from_int(-1), p));
    }
}

#[test]
fn radical_sum_at_four() {
    let v = eval_interval(&ex("sqrt(x) + sqrt(2*x + 1)"), &DyadicInterval::point_int(4), 64)
        .unwrap();
    assert!(v.contains_rational(&int(5)));
    assert!(width_below(&v, 60));
}

#[test]
fn pi_matches_known_digits() {
    let known = decimal("3.14159265358979323846264338327950288419716939937510");
    let slack = decimal("0.00000000000000000000000000000000000000000000000001");
    let v = pi(160);
    assert!(v.lower_rational().unwrap() <= known.clone() + slack.clone());
    assert!(v.upper_rational().unwrap() >= known - slack);
    assert!(width_below(&v, 155));
}

#[test]
fn ln_is_inverse_of_exp() {
    let ln2 = decimal("0.69314718055994530941723212145817656807550013436025");
    let slack = decimal("0.00000000000000000000000000000000000000000000000001");
    let v = eval_interval(&ex("ln(x)"), &DyadicInterval::point_int(2), 160).unwrap();
    assert!(v.lower_rational().unwrap() <= ln2.clone() + slack.clone());
    assert!(v.upper_rational().unwrap() >= ln2 - slack);
    for r in [ratio(1, 3), ratio(7, 2), int(1000), ratio(1, 1_000_000)] {
        let back = eval_interval(&ex("exp(ln(x))"), &DyadicInterval::from_rational(&r, 256), 128).unwrap();
        assert!(back.contains_rational(&r));
        assert!(back.width_f64() < 1e-30);
    }
}

#[test]
fn sin_cos_identities() {
    for r in [ratio(1, 7), int(3), int(-20), ratio(1001, 10)] {
        let v = eval_interval(&ex("sin(x)^2 + cos(x)^2"), &DyadicInterval::from_rational(&r, 256), 128).unwrap();
        assert!(v.contains_rational(&int(1)));
        assert!(v.width_f64() < 1e-30);
    }
    let s = eval_interval(&ex("sin(pi/6)"), &DyadicInterval::point_int(0), 128).unwrap();
    assert!(s.contains_rational(&ratio(1, 2)));
    let c = eval_interval(&ex("cos(pi)"), &DyadicInterval::point_int(0), 128).unwrap();
    assert!(c.contains_rational(&int(-1)));
}

#[test]
fn wide_inputs_give_valid_bounds() {
    let x = DyadicInterval::from_rationals(&int(-2), &int(3), 64);
    let v = eval_interval(&ex("x^2"), &x, 64).unwrap();
    assert_eq!(v.lower_rational(), Some(int(0)));
    assert_eq!(v.upper_rational(), Some(int(9)));
    let r = eval_interval(&ex("1/x"), &DyadicInterval::from_rationals(&int(0), &int(2), 64), 64)
        .unwrap();
    assert!(r.is_positive());
    assert!(r.upper().is_none());
    let half = DyadicInterval::new(Some(Dyadic::zero()), None, 64);
    let e = eval_interval(&ex("exp(-x)"), &half, 64).unwrap();
    assert_eq!(e.lower_rational(), Some(int(0)));
    assert!(e.contains_rational(&int(1)));
}

#[test]
fn domain_misses_are_reported() {
    let neg = DyadicInterval::from_rationals(&int(-3), &int(-1), 64);
    assert_eq!(eval_interval(&ex("sqrt(x)"), &neg, 64), Err(IntervalError::EmptyIntersection));
    assert_eq!(eval_interval(&ex("ln(x)"), &neg, 64), Err(IntervalError::EmptyIntersection));
    assert_eq!(
        eval_interval(&ex("1/x"), &DyadicInterval::point_int(0), 64),
        Err(IntervalError::EmptyIntersection)
    );
    let cube = eval_interval(&ex("root(3, x)"), &DyadicInterval::point_int(-8), 64).unwrap();
    assert!(cube.contains_rational(&int(-2)));
}

/// Enclosure of `26 + s·6√17`.
fn surd_point(s: i64, prec: u32) -> DyadicInterval {
    let v = eval_interval(&(Expr::int(26) + Expr::int(6 * s) * Expr::int(17).sqrt()), &DyadicInterval::point_int(0), prec)
        .unwrap();
    v.with_precision(prec)
}

#[test]
fn sign_of_side_condition_at_both_candidates() {
    let f = ex("3*x - 8");
    assert_eq!(certified_sign(&f, &surd_point(-1, 128), 4096), Sign::Negative);
    assert_eq!(certified_sign(&f, &surd_point(1, 128), 4096), Sign::Positive);
    let unit = DyadicInterval::from_rationals(&int(0), &int(1), 64);
    assert_eq!(certified_sign(&ex("x - x"), &unit, 4096), Sign::ContainsZero);
    assert_eq!(certified_sign(&ex("exp(x) - e"), &DyadicInterval::point_int(1), 256), Sign::Unknown);
}

#[test]
fn decimal_rendering() {
    assert_eq!(decimal_string(&ratio(1, 3), 5), "0.33333");
    assert_eq!(decimal_string(&ratio(-2, 3), 3), "-0.667");
    assert_eq!(decimal_string(&int(12345), 3), "12300");
    assert_eq!(decimal_string(&ratio(9999, 1000), 2), "10");
    assert_eq!(decimal_string(&ratio(1, 100_000_000), 2), "1e-8");
    assert_eq!(decimal_string(&int(0), 4), "0");
}

const CORPUS: &[&str] = &[
    "x^5 - x - 1",
    "sqrt(x) + sqrt(2*x + 1)",
    "exp(x) - x - 2",
    "root(3, 2*x) + sqrt(5)",
    "(x^2 + 1)/(x - 3)",
    "x^6 - x^3 - 1",
    "x*exp(x)",
    "ln(x^2 + 1)",
    "1/(x^2 + 2)",
    "x^-2 + 3",
];

proptest! {
    #[test]
    fn exact_values_lie_in_enclosures(
        idx in 0..CORPUS.len(),
        n in -2000i64..2000,
        d in 1i64..500,
        prec in prop::sample::select(vec![64u32, 128, 256]),
    ) {
        let e = ex(CORPUS[idx]);
        let t = ratio(n, d);
        if let Ok(ExactEval::Value(v)) = e.evaluate_exact(&t) {
            let enc = eval_interval(&e, &at(t.clone()), prec).unwrap();
            prop_assert!(enc.contains_rational(&v), "{} at {}: {} not in {}", CORPUS[idx], t, v, enc);
        }
    }

    #[test]
    fn enclosures_contain_interior_points(
        idx in 0..CORPUS.len(),
        a in -50i64..50,
        w in 1i64..40,
        k in 0i64..=16,
    ) {
        let e = ex(CORPUS[idx]);
        let lo = ratio(a, 4);
        let hi = lo.clone() + ratio(w, 16);
        let t = lo.clone() + (hi.clone() - lo.clone()) * ratio(k, 16);
        let x = DyadicInterval::from_rationals(&lo, &hi, 64);
        if let (Ok(enc), Ok(pt)) = (eval_interval(&e, &x, 64), eval_interval(&e, &at(t.clone()), 128)) {
            // point enclosure must meet the wide enclosure
            prop_assert!(enc.intersect(&pt).is_some(), "{} on {}: {} vs {}", CORPUS[idx], x, enc, pt);
        }
    }

    #[test]
    fn refinement_narrows_point_enclosures(
        idx in 0..CORPUS.len(),
        n in 1i64..300,
        d in 1i64..50,
    ) {
        let e = ex(CORPUS[idx]);
        let x = at(ratio(n, d));
        if let (Ok(a), Ok(b)) = (eval_interval(&e, &x, 64), eval_interval(&e, &x, 128)) {
            prop_assert!(b.width_f64() <= a.width_f64());
        }
    }

    #[test]
    fn certified_signs_agree_with_exact_grid(
        p in prop::collection::vec(-6i64..6, 1..5),
        a in -20i64..20,
        w in 1i64..10,
    ) {
        let mut e = Expr::int(0);
        for (i, c) in p.iter().enumerate() {
            e = e + Expr::int(*c) * Expr::x().pow(i as i64);
        }
        let lo = ratio(a, 2);
        let hi = lo.clone() + ratio(w, 2);
        let x = DyadicInterval::from_rationals(&lo, &hi, 64);
        let s = certified_sign(&e, &x, 512);
        for k in 0..=20 {
            let t = lo.clone() + (hi.clone() - lo.clone()) * ratio(k, 20);
            let v = e.evaluate_exact(&t).unwrap().value().cloned().unwrap();
            match s {
                Sign::Positive => prop_assert!(v > int(0)),
                Sign::Negative => prop_assert!(v < int(0)),
                _ => {}
            }
        }
    }
}
