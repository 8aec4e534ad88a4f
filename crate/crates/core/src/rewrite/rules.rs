use std::fmt;

use num_traits::{One, Zero};

use super::radsum::RadSum;
use super::sign::sign_on;
use super::{RewriteError, SideCondition, SolutionRelation, Step};
use crate::expr::{Domain, Equation, Expr, Predicate, Rational, RealInterval, StructuralSign};
use crate::poly::{RationalFunction, UniPoly};
use crate::solver::{prove_monotone, Monotonicity};

/// Functions that may be applied to both sides without changing the
/// solution set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Injective {
    Exp,
    /// Requires both sides certified positive.
    Ln,
    /// An odd power `k`.
    OddPower(u32),
    /// A total function certified strictly monotone on ℝ, in `x`.
    Monotone(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    AddBoth(Expr),
    SubBoth(Expr),
    MulBoth(Expr),
    DivBoth(Expr),
    SquareBoth,
    ApplyInjective(Injective),
    /// `y = x^k` for a polynomial in `x^k`.
    Substitute(u32),
    IsolateRadical,
    /// `lhs - rhs` expanded to a primitive integer polynomial.
    Expand,
    /// Numerator of `lhs - rhs` as a rational function.
    ClearDenominators,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::AddBoth(t) => write!(f, "AddBoth({t})"),
            Rule::SubBoth(t) => write!(f, "SubBoth({t})"),
            Rule::MulBoth(t) => write!(f, "MulBoth({t})"),
            Rule::DivBoth(t) => write!(f, "DivBoth({t})"),
            Rule::SquareBoth => f.write_str("SquareBoth"),
            Rule::ApplyInjective(Injective::Exp) => f.write_str("ApplyInjective(exp)"),
            Rule::ApplyInjective(Injective::Ln) => f.write_str("ApplyInjective(ln)"),
            Rule::ApplyInjective(Injective::OddPower(k)) => write!(f, "ApplyInjective(^{k})"),
            Rule::ApplyInjective(Injective::Monotone(g)) => write!(f, "ApplyInjective({g})"),
            Rule::Substitute(k) => write!(f, "Substitute(y = x^{k})"),
            Rule::IsolateRadical => f.write_str("IsolateRadical"),
            Rule::Expand => f.write_str("Expand"),
            Rule::ClearDenominators => f.write_str("ClearDenominators"),
        }
    }
}

fn not_applicable(why: &str) -> RewriteError {
    RewriteError::RuleNotApplicable(why.to_string())
}

fn covers(t: &Expr, domain: &Domain) -> Result<(), RewriteError> {
    if domain.is_subset_of(&t.natural_domain().domain) {
        Ok(())
    } else {
        Err(RewriteError::DomainMismatch)
    }
}

fn plus(a: &Expr, t: &Expr) -> Expr {
    match (RadSum::from_expr(a), RadSum::from_expr(t)) {
        (Some(x), Some(y)) => x.add(&y).to_expr(),
        _ => (a.clone() + t.clone()).fold(),
    }
}

fn times(a: &Expr, t: &Expr) -> Expr {
    if let (Expr::Exp(u), Expr::Exp(v)) = (a, t) {
        return plus(u, v).exp();
    }
    match (RadSum::from_expr(a), RadSum::from_expr(t)) {
        (Some(x), Some(y)) => match x.mul(&y) {
            Some(p) => p.to_expr(),
            None => (a.clone() * t.clone()).fold(),
        },
        _ => (a.clone() * t.clone()).fold(),
    }
}

fn divide(a: &Expr, t: &Expr) -> Expr {
    match (t.as_lit(), RadSum::from_expr(a)) {
        (Some(c), Some(x)) if !c.is_zero() => x.scale(&(Rational::one() / c)).to_expr(),
        _ => (a.clone() / t.clone()).fold(),
    }
}

fn power(a: &Expr, k: u32) -> Expr {
    RadSum::from_expr(a).and_then(|r| r.power_expr(k)).unwrap_or_else(|| a.clone().pow(k as i64).fold())
}

fn is_strict(s: StructuralSign) -> bool {
    matches!(s, StructuralSign::Positive | StructuralSign::Negative)
}

/// Side condition making squaring reversible, or `None` when both sides
/// are certified to share a sign.
fn squaring_condition(eq: &Equation) -> Option<SideCondition> {
    let sl = sign_on(&eq.lhs, &eq.domain);
    let sr = sign_on(&eq.rhs, &eq.domain);
    if (sl.is_nonnegative() && sr.is_nonnegative()) || (sl.is_nonpositive() && sr.is_nonpositive()) {
        return None;
    }
    Some(if sr.is_nonpositive() {
        SideCondition::new(eq.lhs.clone(), Predicate::Le0)
    } else if sr.is_nonnegative() {
        SideCondition::new(eq.lhs.clone(), Predicate::Ge0)
    } else if sl.is_nonpositive() {
        SideCondition::new(eq.rhs.clone(), Predicate::Le0)
    } else if sl.is_nonnegative() {
        SideCondition::new(eq.rhs.clone(), Predicate::Ge0)
    } else {
        SideCondition::new(eq.lhs.clone() * eq.rhs.clone(), Predicate::Ge0)
    })
}

/// The equation with radicals on one side: `q = -c·√p` for one radical,
/// `Σ c_i·√p_i = -q` for several. `None` without radicals.
pub fn isolate_radical(eq: &Equation) -> Option<(Expr, Expr)> {
    let d = RadSum::from_expr(&eq.lhs)?.add(&RadSum::from_expr(&eq.rhs)?.scale(&-Rational::one()));
    if d.is_polynomial() {
        return None;
    }
    let radicals = RadSum { poly: UniPoly::zero(), terms: d.terms.clone() };
    if d.terms.len() == 1 {
        Some((d.poly.to_expr(), radicals.scale(&-Rational::one()).to_expr()))
    } else {
        Some((radicals.to_expr(), d.poly.neg().to_expr()))
    }
}

/// `p(x) = q(x^k)` gives `q`.
fn deflate(p: &UniPoly, k: u32) -> Option<UniPoly> {
    let k = k as usize;
    if k < 2 {
        return None;
    }
    let mut out = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if i % k != 0 {
            if !c.is_zero() {
                return None;
            }
            continue;
        }
        out.push(c.clone());
    }
    Some(UniPoly::new(out))
}

fn image_of_power(domain: &Domain, k: u32) -> Option<Domain> {
    if !domain.is_real_line() {
        return None;
    }
    Some(if k % 2 == 1 {
        Domain::real_line()
    } else {
        Domain::from_interval(RealInterval::from_lower(Rational::zero(), true))
    })
}

fn build(
    eq: &Equation,
    rule: Rule,
    lhs: Expr,
    rhs: Expr,
    relation: SolutionRelation,
    side_conditions: Vec<SideCondition>,
) -> Step {
    let output = Equation::new(lhs, rhs, eq.domain.clone());
    Step { rule, input: eq.clone(), output, relation, side_conditions, lossy: false, output_variable: "x" }
}

/// Applies `rule` without permission to lose solutions.
pub fn apply_step(eq: &Equation, rule: Rule) -> Result<Step, RewriteError> {
    apply(eq, rule, false)
}

/// Like [`apply_step`], but a division by a possibly-zero expression is
/// allowed and tagged `Subset` with the lossy marker.
pub fn apply_step_lossy(eq: &Equation, rule: Rule) -> Result<Step, RewriteError> {
    apply(eq, rule, true)
}

fn apply(eq: &Equation, rule: Rule, allow_lossy: bool) -> Result<Step, RewriteError> {
    use SolutionRelation::*;
    let (l, r) = (&eq.lhs, &eq.rhs);
    match &rule {
        Rule::AddBoth(t) | Rule::SubBoth(t) => {
            covers(t, &eq.domain)?;
            let t = if matches!(rule, Rule::SubBoth(_)) { -(t.clone()) } else { t.clone() };
            let (nl, nr) = (plus(l, &t), plus(r, &t));
            Ok(build(eq, rule, nl, nr, Equivalent, vec![]))
        }
        Rule::MulBoth(t) => {
            covers(t, &eq.domain)?;
            let (nl, nr) = (times(l, t), times(r, t));
            if is_strict(sign_on(t, &eq.domain)) {
                Ok(build(eq, rule.clone(), nl, nr, Equivalent, vec![]))
            } else {
                let cond = SideCondition::new(t.clone(), Predicate::Ne0);
                Ok(build(eq, rule.clone(), nl, nr, Superset, vec![cond]))
            }
        }
        Rule::DivBoth(t) => {
            covers(t, &eq.domain)?;
            let (nl, nr) = (divide(l, t), divide(r, t));
            if is_strict(sign_on(t, &eq.domain)) {
                return Ok(build(eq, rule.clone(), nl, nr, Equivalent, vec![]));
            }
            if !allow_lossy {
                return Err(not_applicable("division by a possibly-zero expression may lose solutions"));
            }
            let cond = SideCondition::new(t.clone(), Predicate::Ne0);
            let mut step = build(eq, rule.clone(), nl, nr, Subset, vec![cond]);
            step.lossy = true;
            Ok(step)
        }
        Rule::SquareBoth => {
            let (nl, nr) = (power(l, 2), power(r, 2));
            match squaring_condition(eq) {
                None => Ok(build(eq, rule, nl, nr, Equivalent, vec![])),
                Some(c) => Ok(build(eq, rule, nl, nr, Superset, vec![c])),
            }
        }
        Rule::ApplyInjective(f) => {
            let (nl, nr) = match f {
                Injective::Exp => (l.clone().exp(), r.clone().exp()),
                Injective::Ln => {
                    let pos = |e: &Expr| sign_on(e, &eq.domain) == StructuralSign::Positive;
                    if !pos(l) || !pos(r) {
                        return Err(not_applicable("ln needs both sides certified positive"));
                    }
                    let log = |e: &Expr| match e {
                        Expr::Exp(u) => *u.clone(),
                        _ => e.clone().ln(),
                    };
                    (log(l), log(r))
                }
                Injective::OddPower(k) => {
                    if k % 2 == 0 {
                        return Err(not_applicable("power is not odd"));
                    }
                    (power(l, *k), power(r, *k))
                }
                Injective::Monotone(g) => {
                    let certified = matches!(
                        prove_monotone(g, &Domain::real_line()),
                        Ok(Monotonicity::StrictlyIncreasing | Monotonicity::StrictlyDecreasing)
                    );
                    if !g.is_total() || !certified {
                        return Err(not_applicable("function not certified strictly monotone on the real line"));
                    }
                    (g.substitute(l), g.substitute(r))
                }
            };
            Ok(build(eq, rule.clone(), nl, nr, Equivalent, vec![]))
        }
        Rule::Substitute(k) => {
            let p = UniPoly::from_expr(&eq.difference()).map_err(|_| not_applicable("not a polynomial equation"))?;
            let q = deflate(&p, *k).ok_or_else(|| not_applicable("not a polynomial in x^k"))?;
            let image = image_of_power(&eq.domain, *k)
                .ok_or_else(|| not_applicable("substitution needs the whole real line"))?;
            let output = Equation::new(q.to_expr(), Expr::int(0), image);
            Ok(Step {
                rule,
                input: eq.clone(),
                output,
                relation: Equivalent,
                side_conditions: vec![],
                lossy: false,
                output_variable: "y",
            })
        }
        Rule::IsolateRadical => {
            let (nl, nr) = isolate_radical(eq).ok_or_else(|| not_applicable("no radical to isolate"))?;
            Ok(build(eq, rule, nl, nr, Equivalent, vec![]))
        }
        Rule::Expand => {
            let p = UniPoly::from_expr(&eq.difference()).map_err(|_| not_applicable("not a polynomial equation"))?;
            let lhs = if p.is_zero() { Expr::int(0) } else { p.primitive().to_expr() };
            Ok(build(eq, rule, lhs, Expr::int(0), Equivalent, vec![]))
        }
        Rule::ClearDenominators => {
            let rf = RationalFunction::from_expr(&eq.difference())
                .ok_or_else(|| not_applicable("not a rational equation"))?;
            let lhs = if rf.numer.is_zero() { Expr::int(0) } else { rf.numer.primitive().to_expr() };
            Ok(build(eq, rule, lhs, Expr::int(0), Equivalent, vec![]))
        }
    }
}
