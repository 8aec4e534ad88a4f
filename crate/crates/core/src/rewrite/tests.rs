use proptest::prelude::*;

use super::*;
use crate::expr::{int, ratio, Domain, Equation, Expr, Predicate, RealInterval};
use crate::parse::{parse_equation, parse_expression, render_expr};

fn nonneg() -> Domain {
    Domain::from_interval(RealInterval::from_lower(int(0), true))
}

fn exam() -> Equation {
    parse_equation("sqrt(x) + sqrt(2*x + 1) = 3", Some("[0,inf)")).unwrap()
}

fn text(eq: &Equation) -> String {
    format!("{} = {}", render_expr(&eq.lhs), render_expr(&eq.rhs))
}

fn grid() -> Vec<crate::expr::Rational> {
    (-16..=16).map(|k| ratio(k, 4)).collect()
}

#[test]
fn squaring_the_radical_sum_is_equivalent() {
    let s = apply_step(&exam(), Rule::SquareBoth).unwrap();
    assert_eq!(s.relation, SolutionRelation::Equivalent);
    assert!(s.side_conditions.is_empty());
    assert_eq!(text(&s.output), "x + (2*x + 1) + 2*sqrt(x*(2*x + 1)) = 9");
    assert_eq!(grid_violation(&s, &grid()), None);
}

#[test]
fn isolating_after_squaring_reorders() {
    let s1 = apply_step(&exam(), Rule::SquareBoth).unwrap();
    let s2 = apply_step(&s1.output, Rule::IsolateRadical).unwrap();
    assert_eq!(s2.relation, SolutionRelation::Equivalent);
    let (l, r) = (render_expr(&s2.output.lhs), render_expr(&s2.output.rhs));
    assert_eq!(l, "3*x - 8");
    assert_eq!(r, "-2*sqrt(2*x^2 + x)");
}

#[test]
fn squaring_opposite_signs_is_a_superset_with_condition() {
    let eq = Equation::new(
        parse_expression("3*x - 8").unwrap(),
        parse_expression("-2*sqrt(2*x^2 + x)").unwrap(),
        nonneg(),
    );
    let s = apply_step(&eq, Rule::SquareBoth).unwrap();
    assert_eq!(s.relation, SolutionRelation::Superset);
    assert_eq!(s.side_conditions, vec![SideCondition::new(parse_expression("3*x - 8").unwrap(), Predicate::Le0)]);
    let e = apply_step(&s.output, Rule::Expand).unwrap();
    assert_eq!(text(&e.output), "x^2 - 52*x + 64 = 0");
    assert_eq!(grid_violation(&s, &grid()), None);
}

#[test]
fn adding_a_radical_moves_it_across() {
    let t = -parse_expression("sqrt(2*x + 1)").unwrap();
    let s = apply_step(&exam(), Rule::AddBoth(t)).unwrap();
    assert_eq!(s.relation, SolutionRelation::Equivalent);
    assert_eq!(text(&s.output), "sqrt(x) = 3 - sqrt(2*x + 1)");
}

#[test]
fn multiplying_by_a_possible_zero_may_gain_solutions() {
    let eq = parse_equation("x = 1", None).unwrap();
    let s = apply_step(&eq, Rule::MulBoth(Expr::x())).unwrap();
    assert_eq!(s.relation, SolutionRelation::Superset);
    assert_eq!(s.side_conditions[0].pred, Predicate::Ne0);
    assert!(holds_at(&s.output, &int(0)).unwrap());
    assert!(!holds_at(&s.input, &int(0)).unwrap());
    let s = apply_step(&eq, Rule::MulBoth(parse_expression("x^2 + 1").unwrap())).unwrap();
    assert_eq!(s.relation, SolutionRelation::Equivalent);
}

#[test]
fn division_by_a_possible_zero_needs_the_lossy_flag() {
    let eq = parse_equation("x^2 = x", None).unwrap();
    assert!(matches!(apply_step(&eq, Rule::DivBoth(Expr::x())), Err(RewriteError::RuleNotApplicable(_))));
    let s = apply_step_lossy(&eq, Rule::DivBoth(Expr::x())).unwrap();
    assert_eq!(s.relation, SolutionRelation::Subset);
    assert!(s.lossy);
    assert_eq!(grid_violation(&s, &grid()), None);
    let s = apply_step(&eq, Rule::DivBoth(Expr::int(2))).unwrap();
    assert_eq!(s.relation, SolutionRelation::Equivalent);
    assert!(!s.lossy);
}

#[test]
fn operands_must_be_defined_on_the_domain() {
    let eq = parse_equation("x = 1", None).unwrap();
    let r = apply_step(&eq, Rule::AddBoth(parse_expression("sqrt(x)").unwrap()));
    assert_eq!(r, Err(RewriteError::DomainMismatch));
}

#[test]
fn substitution_reduces_and_records_the_new_variable() {
    let eq = parse_equation("x^6 - x^3 - 1 = 0", None).unwrap();
    let s = apply_step(&eq, Rule::Substitute(3)).unwrap();
    assert_eq!(s.output_variable, "y");
    assert_eq!(s.output_text(), "y^2 - y - 1 = 0");
    assert_eq!(s.rule.to_string(), "Substitute(y = x^3)");
    assert_eq!(grid_violation(&s, &grid()), None);
    let s = apply_step(&parse_equation("x^4 - 5*x^2 + 4 = 0", None).unwrap(), Rule::Substitute(2)).unwrap();
    assert_eq!(s.output.domain, nonneg());
    assert_eq!(grid_violation(&s, &grid()), None);
}

#[test]
fn clearing_denominators_keeps_the_poles_out() {
    let eq = parse_equation("(x^2 - 1)/(x - 1) = 0", None).unwrap();
    let s = apply_step(&eq, Rule::ClearDenominators).unwrap();
    assert_eq!(text(&s.output), "x^2 - 1 = 0");
    assert!(!s.output.domain.contains(&int(1)));
    assert_eq!(grid_violation(&s, &grid()), None);
}

#[test]
fn injective_functions() {
    let eq = parse_equation("x = 2", None).unwrap();
    let s = apply_step(&eq, Rule::ApplyInjective(Injective::OddPower(3))).unwrap();
    assert_eq!(text(&s.output), "x^3 = 8");
    assert!(apply_step(&eq, Rule::ApplyInjective(Injective::OddPower(2))).is_err());
    assert!(apply_step(&eq, Rule::ApplyInjective(Injective::Ln)).is_err());
    let g = parse_expression("x^3 + x").unwrap();
    let s = apply_step(&eq, Rule::ApplyInjective(Injective::Monotone(g))).unwrap();
    assert_eq!(s.relation, SolutionRelation::Equivalent);
    assert_eq!(grid_violation(&s, &grid()), None);
    let bad = parse_expression("x^2").unwrap();
    assert!(apply_step(&eq, Rule::ApplyInjective(Injective::Monotone(bad))).is_err());
}

#[test]
fn composition_examples() {
    use SolutionRelation::*;
    let s1 = apply_step(&exam(), Rule::SquareBoth).unwrap();
    let s2 = apply_step(&s1.output, Rule::IsolateRadical).unwrap();
    let s3 = apply_step(&s2.output, Rule::SquareBoth).unwrap();
    let chain = vec![s1.clone(), s2.clone(), s3.clone()];
    assert_eq!(compose(&chain), Ok(Superset));
    assert_eq!(compose(&chain[..2]), Ok(Equivalent));
    assert_eq!(Superset.compose(Subset), Unknown);
    assert_eq!(Subset.compose(Superset), Unknown);
    assert_eq!(compose(&[s1.clone(), s3.clone()]), Err(RewriteError::BrokenChain(1)));
    let trace = Trace::from_steps(chain).unwrap();
    assert_eq!(trace.overall(), Superset);
    assert_eq!(trace.side_conditions().count(), 1);
    let mut t = Trace::new();
    t.push(s1).unwrap();
    assert_eq!(t.push(s3), Err(RewriteError::BrokenChain(1)));
}

#[test]
fn radsum_squares_merge_cross_terms() {
    let r = RadSum::from_expr(&parse_expression("sqrt(x) + sqrt(2*x + 1)").unwrap()).unwrap();
    assert_eq!(r.terms.len(), 2);
    let p = RadSum::from_expr(&parse_expression("sqrt(x)*sqrt(x)").unwrap()).unwrap();
    assert!(p.is_polynomial());
    assert_eq!(render_expr(&p.to_expr()), "x");
}

#[test]
fn sign_on_uses_subdivision() {
    let e = parse_expression("x^2 - 3*x + 3").unwrap();
    let d = Domain::from_interval(RealInterval::closed(int(-2), int(4)));
    assert_eq!(sign_on(&e, &d), crate::expr::StructuralSign::Positive);
}

fn relation() -> impl Strategy<Value = SolutionRelation> {
    prop_oneof![
        Just(SolutionRelation::Equivalent),
        Just(SolutionRelation::Superset),
        Just(SolutionRelation::Subset),
        Just(SolutionRelation::Unknown),
    ]
}

fn small_poly() -> impl Strategy<Value = Expr> {
    (-3i64..=3, -3i64..=3, -3i64..=3).prop_map(|(a, b, c)| {
        (Expr::int(a) * Expr::x().pow(2) + Expr::int(b) * Expr::x() + Expr::int(c)).fold()
    })
}

fn atom() -> impl Strategy<Value = Expr> {
    prop_oneof![
        small_poly(),
        (1i64..=3, -2i64..=4).prop_map(|(a, b)| (Expr::int(a) * Expr::x() + Expr::int(b)).fold().sqrt()),
        (-2i64..=2, 1i64..=3).prop_map(|(c, a)| Expr::int(c) * (Expr::int(a) * Expr::x()).fold().sqrt()),
        (-2i64..=2).prop_map(|c| Expr::int(1) / (Expr::x() - Expr::int(c)).fold()),
        (-2i64..=2).prop_map(Expr::int),
    ]
}

fn equation() -> impl Strategy<Value = Equation> {
    (atom(), atom(), atom()).prop_map(|(a, b, c)| Equation::natural(a + b, c))
}

fn rule() -> impl Strategy<Value = Rule> {
    prop_oneof![
        atom().prop_map(Rule::AddBoth),
        atom().prop_map(Rule::SubBoth),
        atom().prop_map(Rule::MulBoth),
        prop_oneof![Just(Expr::int(3)), Just(Expr::x()), small_poly()].prop_map(Rule::DivBoth),
        Just(Rule::SquareBoth),
        Just(Rule::IsolateRadical),
        Just(Rule::Expand),
        Just(Rule::ClearDenominators),
        Just(Rule::ApplyInjective(Injective::OddPower(3))),
        Just(Rule::Substitute(2)),
    ]
}

proptest! {
    #[test]
    fn compose_has_identity(r in relation()) {
        prop_assert_eq!(SolutionRelation::Equivalent.compose(r), r);
        prop_assert_eq!(r.compose(SolutionRelation::Equivalent), r);
    }

    #[test]
    fn compose_is_associative(a in relation(), b in relation(), c in relation()) {
        prop_assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
    }

    #[test]
    fn superset_absorbs(r in relation()) {
        let s = SolutionRelation::Superset;
        prop_assert!(matches!(s.compose(r), SolutionRelation::Superset | SolutionRelation::Unknown));
        prop_assert_eq!(s.compose(s), s);
    }

    #[test]
    fn rules_respect_their_tags(eq in equation(), r in rule()) {
        if let Ok(step) = apply_step(&eq, r) {
            prop_assert!(step.output.domain.is_subset_of(&step.output.lhs.natural_domain().domain));
            prop_assert!(!step.lossy);
            prop_assert_ne!(step.relation, SolutionRelation::Subset);
            prop_assert_eq!(grid_violation(&step, &grid()), None, "step {}", step);
        }
    }
}
