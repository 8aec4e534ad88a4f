use proptest::prelude::*;

use super::*;
use crate::expr::{int, Branch, RealInterval};
use crate::poly::{BiPoly, UniPoly};

fn radical_sum() -> Expr {
    Expr::x().sqrt() + (Expr::int(2) * Expr::x() + Expr::int(1)).sqrt()
}

fn ray0() -> Domain {
    Domain::from_interval(RealInterval::from_lower(int(0), true))
}

fn expected_radical_sum_annihilator() -> BiPoly {
    // y^4 - (6x+2) y^2 + (x+1)^2
    let y = BiPoly::y();
    let x = BiPoly::x();
    let one = BiPoly::constant(1.into());
    y.pow(4)
        .sub(&x.scale(&6.into()).add(&one.scale(&2.into())).mul(&y.pow(2)))
        .add(&x.add(&one).pow(2))
}

#[test]
fn radical_sum_annihilator() {
    let cert = classify(&radical_sum(), &ray0()).unwrap();
    let AlgebraicityCertificate::Algebraic { annihilator } = cert else { panic!("not algebraic") };
    assert_eq!(annihilator, expected_radical_sum_annihilator().normalized());
    for (x, y) in [(0, 1), (4, 5), (144, 29)] {
        assert_eq!(annihilator.eval(&int(x), &int(y)), int(0));
    }
}

#[test]
fn cube_root_plus_sqrt5_annihilator() {
    let e = (Expr::int(2) * Expr::x()).root(3) + Expr::int(5).sqrt();
    let cert = classify(&e, &Domain::real_line()).unwrap();
    let AlgebraicityCertificate::Algebraic { annihilator } = cert else { panic!("not algebraic") };
    let y = BiPoly::y();
    let x = BiPoly::x();
    let c = |n: i64| BiPoly::constant(n.into());
    let a = y.pow(3).add(&y.scale(&15.into())).sub(&x.scale(&2.into()));
    let b = y.pow(2).scale(&3.into()).add(&c(5));
    let expected = a.pow(2).sub(&b.pow(2).scale(&5.into())).normalized();
    assert_eq!(annihilator, expected);
    assert_eq!(annihilator_verify(&e, &annihilator, 20, 128), AnnihilatorCheck::Verified);
}

#[test]
fn coefficient_form_examples() {
    let form = to_coefficient_form(&expected_radical_sum_annihilator()).unwrap();
    assert_eq!(form.degree(), 4);
    assert_eq!(form.get(0), UniPoly::from_ints(&[1, 2, 1]));
    assert_eq!(form.get(1), UniPoly::zero());
    assert_eq!(form.get(2), UniPoly::from_ints(&[-2, -6]));
    assert_eq!(form.get(4), UniPoly::one());

    let form = to_coefficient_form(&BiPoly::from_ints(&[(0, 1, 1), (3, 0, -1)])).unwrap();
    assert_eq!(form.get(0), UniPoly::from_ints(&[0, 0, 0, -1]));
    assert_eq!(form.get(1), UniPoly::one());

    let form = to_coefficient_form(&BiPoly::constant(7.into())).unwrap();
    assert_eq!(form.coeffs(), &[UniPoly::from_ints(&[7])]);
    assert_eq!(to_coefficient_form(&BiPoly::zero()), Err(AlgError::ZeroInput));
}

#[test]
fn transcendental_rules() {
    let pos = Domain::from_interval(RealInterval::from_lower(int(0), false));
    let tag = |e: &Expr, d: &Domain| match classify(e, d).unwrap() {
        AlgebraicityCertificate::Transcendental { reason } => Some(reason.rule.tag()),
        _ => None,
    };
    let line = Domain::real_line();
    assert_eq!(tag(&Expr::x().exp(), &line), Some("R1"));
    assert_eq!(tag(&Expr::x().ln(), &pos), Some("R3"));
    assert_eq!(tag(&(Expr::x() + Expr::int(1)).ln(), &pos), Some("R1"));
    assert_eq!(tag(&Expr::x().sqrt().sin(), &pos), Some("R1"));
    assert_eq!(tag(&Expr::base_power(Expr::Pi), &line), Some("R2"));
    assert_eq!(tag(&Expr::lambert_w(Branch::Principal, Expr::x()), &pos), Some("R4"));
    assert_eq!(classify(&Expr::E, &line).unwrap(), AlgebraicityCertificate::Unknown);
    assert_eq!(classify(&(Expr::x().exp() + Expr::x()), &line).unwrap(), AlgebraicityCertificate::Unknown);
    assert_eq!(classify(&Expr::x(), &Domain::empty()), Err(AlgError::EmptyDomain));
}

#[test]
fn transcendental_base_at_one() {
    let f = Expr::base_power(Expr::Pi);
    assert_eq!(f.substitute(&Expr::int(1)).fold(), Expr::Pi);
    let declared = TranscendentalConstants::default().declare(Expr::int(2).sqrt().exp());
    let g = Expr::base_power(Expr::int(2).sqrt().exp());
    assert!(classify_with(&g, &Domain::real_line(), &declared).unwrap().is_transcendental());
    assert!(!classify(&g, &Domain::real_line()).unwrap().is_transcendental());
}

#[test]
fn verify_examples() {
    let p = expected_radical_sum_annihilator();
    assert_eq!(annihilator_verify(&radical_sum(), &p, 20, 128), AnnihilatorCheck::Verified);
    let y_minus_x = BiPoly::from_ints(&[(0, 1, 1), (1, 0, -1)]);
    assert_eq!(annihilator_verify(&Expr::x().exp(), &y_minus_x, 20, 128), AnnihilatorCheck::Refuted);
    let y_minus_x2 = BiPoly::from_ints(&[(0, 1, 1), (2, 0, -1)]);
    assert_eq!(annihilator_verify(&Expr::x().pow(2), &y_minus_x2, 20, 128), AnnihilatorCheck::Verified);
    // a multiple of the true annihilator is still proven
    let multiple = p.mul(&BiPoly::from_ints(&[(0, 1, 1), (0, 0, 3)]));
    assert_eq!(annihilator_verify(&radical_sum(), &multiple, 20, 128), AnnihilatorCheck::Verified);
}

#[test]
fn inverse_annihilator_examples() {
    let sq = BiPoly::from_ints(&[(0, 1, 1), (2, 0, -1)]);
    let inv = inverse_annihilator(&sq).unwrap();
    assert_eq!(inv, BiPoly::from_ints(&[(1, 0, 1), (0, 2, -1)]));
    assert_eq!(annihilator_verify(&Expr::x().sqrt(), &inv, 20, 128), AnnihilatorCheck::Verified);

    let cube = BiPoly::from_ints(&[(0, 3, 1), (1, 0, -1)]);
    assert_eq!(inverse_annihilator(&cube).unwrap(), BiPoly::from_ints(&[(3, 0, 1), (0, 1, -1)]));

    // the inverse of the radical sum at y = 3 is 26 - 6√17
    let inv = inverse_annihilator(&expected_radical_sum_annihilator()).unwrap();
    let surd = crate::poly::QuadraticSurd::new(int(26), int(-6), 17.into());
    let x = crate::interval::DyadicInterval::from_rational(&int(3), 128);
    let y = surd.enclosure(128);
    assert!(inv.eval_interval(&x, &y).contains_zero());
    assert_eq!(inverse_annihilator(&BiPoly::zero()), Err(AlgError::ZeroInput));
}

#[test]
fn equation_classes() {
    let eq = Equation::natural(Expr::x().exp(), Expr::ratio(1, 2));
    assert_eq!(classify_equation(&eq), EquationClass::TranscendentalEq);
    let eq = Equation::natural(Expr::x().pow(6) - Expr::x().pow(3) - Expr::int(1), Expr::int(0));
    assert_eq!(classify_equation(&eq), EquationClass::AlgebraicEq);
    let eq = Equation::natural(Expr::x().exp(), Expr::x().exp());
    assert_eq!(classify_equation(&eq), EquationClass::TranscendentalEq);
    let eq = Equation::natural(Expr::x().exp() + Expr::x(), Expr::int(0));
    assert_eq!(classify_equation(&eq), EquationClass::UnknownEq);
}

#[test]
fn enumeration_prefix() {
    assert!(enumerate_algebraic(0).is_empty());
    let one = enumerate_algebraic(1);
    assert_eq!(one[0].0, UniPoly::x());
    assert_eq!(one[0].1.exact_value(), Some(int(0)));
    let three: Vec<Rational> = enumerate_algebraic(3).iter().map(|(_, r)| r.exact_value().unwrap()).collect();
    assert_eq!(three, vec![int(0), int(-1), int(1)]);
}

#[test]
fn height_order() {
    let first: Vec<Vec<i64>> = PolynomialsByHeight::new().take(5).collect();
    assert_eq!(first, vec![vec![1, 0], vec![2, 0], vec![1, 1], vec![1, -1], vec![1, 0, 0]]);
    for p in PolynomialsByHeight::new().take(500) {
        assert!(p[0] > 0);
    }
}

#[test]
fn enumerated_numbers_are_distinct_roots() {
    let nums = enumerate_algebraic(60);
    for (p, r) in &nums {
        let enc = r.enclosure(64);
        assert!(p.eval_interval(&enc).contains_zero());
    }
    for i in 0..nums.len() {
        for j in 0..i {
            assert!(!same_number(&nums[i].1, &nums[j].1));
        }
    }
    let golden = nums.iter().any(|(_, r)| {
        let v = r.enclosure(64).midpoint().unwrap().to_f64();
        (v - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12
    });
    assert!(golden);
}

#[test]
fn same_number_detects_equal_roots_of_different_polynomials() {
    let p = UniPoly::from_ints(&[-2, 0, 1]);
    let q = UniPoly::from_ints(&[-4, 0, 0, 0, 1]);
    let rp = crate::poly::sturm_isolate(&p).unwrap();
    let rq = crate::poly::sturm_isolate(&q).unwrap();
    assert!(same_number(&rp[1], &rq[1]));
    assert!(!same_number(&rp[0], &rq[1]));
}

fn small_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-5i64..6).prop_map(Expr::int),
        Just(Expr::x()),
        (1i64..4).prop_map(|k| (Expr::x() + Expr::int(k)).sqrt()),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            inner.clone().prop_map(|a| a.pow(2)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn algebraic_certificates_are_sound(e in small_expr()) {
        let dom = e.natural_domain().domain;
        prop_assume!(!dom.is_empty());
        if let AlgebraicityCertificate::Algebraic { annihilator } = classify(&e, &dom).unwrap() {
            prop_assert!(!annihilator.is_zero());
            for t in sample_points(&dom, 50) {
                for prec in [64u32, 160] {
                    let x = crate::interval::DyadicInterval::from_rational(&t, prec);
                    if let Ok(y) = crate::interval::eval_interval(&e, &x, prec) {
                        prop_assert!(annihilator.eval_interval(&x, &y).contains_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn coefficient_form_round_trip(terms in proptest::collection::vec((0u32..4, 0u32..4, -9i64..10), 1..8)) {
        let p = BiPoly::from_ints(&terms);
        prop_assume!(!p.is_zero());
        prop_assert_eq!(from_coefficient_form(&to_coefficient_form(&p).unwrap()), p);
    }

    #[test]
    fn inverse_annihilator_is_involution(terms in proptest::collection::vec((0u32..4, 0u32..4, -9i64..10), 1..8)) {
        let p = BiPoly::from_ints(&terms);
        prop_assume!(!p.is_zero());
        prop_assert_eq!(inverse_annihilator(&inverse_annihilator(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn integer_polynomials_have_graph_annihilators(coeffs in proptest::collection::vec(-20i64..21, 1..6)) {
        let p = UniPoly::from_ints(&coeffs);
        let e = p.to_expr();
        let cert = classify(&e, &Domain::real_line()).unwrap();
        let expected = BiPoly::graph_of(&p, &UniPoly::one());
        prop_assert_eq!(cert, AlgebraicityCertificate::Algebraic { annihilator: expected });
    }
}
