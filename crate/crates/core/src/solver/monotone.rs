use num_traits::{Signed, Zero};

use super::{SolutionRep, SolverError};
use crate::expr::{Branch, Domain, Endpoint, Equation, ExactEval, Expr, Rational, RealInterval, StructuralSign};
use crate::interval::{certified_sign, eval_interval, DyadicInterval, Sign};
use crate::poly::{count_roots, UniPoly};
use crate::rewrite::sign_on;
use crate::special::{inverse_value, InverseFunctionValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    StrictlyIncreasing,
    StrictlyDecreasing,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    Inc,
    Dec,
    Const,
}

impl Dir {
    fn flip(self) -> Dir {
        match self {
            Dir::Inc => Dir::Dec,
            Dir::Dec => Dir::Inc,
            Dir::Const => Dir::Const,
        }
    }

    fn plus(self, o: Dir) -> Option<Dir> {
        match (self, o) {
            (a, Dir::Const) => Some(a),
            (Dir::Const, b) => Some(b),
            (a, b) if a == b => Some(a),
            _ => None,
        }
    }

    fn scaled(self, sign: i32) -> Dir {
        match sign {
            0 => Dir::Const,
            s if s < 0 => self.flip(),
            _ => self,
        }
    }
}

fn constant_sign(c: &Expr) -> Option<i32> {
    if let Ok(ExactEval::Value(v)) = c.evaluate_exact(&Rational::zero()) {
        return Some(if v.is_zero() { 0 } else if v.is_positive() { 1 } else { -1 });
    }
    match certified_sign(c, &DyadicInterval::point_int(0), 512) {
        Sign::Positive => Some(1),
        Sign::Negative => Some(-1),
        _ => None,
    }
}

fn fixed_sign(e: &Expr, d: &Domain) -> Option<i32> {
    match sign_on(e, d) {
        StructuralSign::Positive => Some(1),
        StructuralSign::Negative => Some(-1),
        _ => None,
    }
}

/// Direction of `e` on `d` from the shape of the expression alone.
fn structural(e: &Expr, d: &Domain) -> Option<Dir> {
    use Expr::*;
    if e.is_constant() {
        return Some(Dir::Const);
    }
    match e {
        Var => Some(Dir::Inc),
        Neg(a) => structural(a, d).map(Dir::flip),
        Add(a, b) => structural(a, d)?.plus(structural(b, d)?),
        Sub(a, b) => structural(a, d)?.plus(structural(b, d)?.flip()),
        Mul(c, u) | Mul(u, c) if c.is_constant() => Some(structural(u, d)?.scaled(constant_sign(c)?)),
        Div(u, c) if c.is_constant() => Some(structural(u, d)?.scaled(constant_sign(c)?)),
        Div(c, u) if c.is_constant() => {
            fixed_sign(u, d)?;
            Some(structural(u, d)?.flip().scaled(constant_sign(c)?))
        }
        Pow(u, k) if *k > 0 && k % 2 == 1 => structural(u, d),
        Pow(u, k) if *k > 0 => {
            let s = sign_on(u, d);
            if s.is_nonnegative() {
                structural(u, d)
            } else if s.is_nonpositive() {
                structural(u, d).map(Dir::flip)
            } else {
                None
            }
        }
        Root(_, u) | Exp(u) | Ln(u) | W(Branch::Principal, u) => structural(u, d),
        W(Branch::Lower, u) => structural(u, d).map(Dir::flip),
        _ => None,
    }
}

fn from_derivative_sign(s: i32) -> Monotonicity {
    if s > 0 {
        Monotonicity::StrictlyIncreasing
    } else {
        Monotonicity::StrictlyDecreasing
    }
}

/// Exact test for polynomials: the derivative has no root inside `iv`.
fn polynomial_direction(p: &UniPoly, iv: &RealInterval) -> Monotonicity {
    let dp = p.derivative();
    if dp.is_zero() {
        return Monotonicity::Unknown;
    }
    let a = iv.lower.value();
    let b = iv.upper.value();
    let mut inside = count_roots(&dp, a, b);
    if let Some(b) = b {
        if dp.eval(b).is_zero() {
            inside -= 1;
        }
    }
    if inside > 0 {
        return Monotonicity::Unknown;
    }
    from_derivative_sign(dp.sign_at(&iv.sample_point()))
}

/// Strict monotonicity of `e` on the single interval `d`.
///
/// Tries structural rules, then an exact Sturm count on the derivative of
/// a polynomial, then a certified sign of the symbolic derivative.
pub fn prove_monotone(e: &Expr, d: &Domain) -> Result<Monotonicity, SolverError> {
    let iv = match d.intervals() {
        [iv] => iv.clone(),
        [] => return Ok(Monotonicity::Unknown),
        _ => return Err(SolverError::MultiIntervalDomain),
    };
    if !d.is_subset_of(&e.natural_domain().domain) {
        return Ok(Monotonicity::Unknown);
    }
    match structural(e, d) {
        Some(Dir::Inc) => return Ok(Monotonicity::StrictlyIncreasing),
        Some(Dir::Dec) => return Ok(Monotonicity::StrictlyDecreasing),
        _ => {}
    }
    if let Ok(p) = UniPoly::from_expr(e) {
        return Ok(polynomial_direction(&p, &iv));
    }
    let interior = Domain::from_interval(RealInterval::new(open(&iv.lower), open(&iv.upper)));
    Ok(match sign_on(&e.differentiate(), &interior) {
        StructuralSign::Positive => Monotonicity::StrictlyIncreasing,
        StructuralSign::Negative => Monotonicity::StrictlyDecreasing,
        _ => Monotonicity::Unknown,
    })
}

fn open(e: &Endpoint) -> Endpoint {
    match e {
        Endpoint::Closed(a) => Endpoint::Open(a.clone()),
        other => other.clone(),
    }
}

/// Behaviour of an expression at one end of its domain.
#[derive(Debug, Clone)]
enum Limit {
    PosInf,
    NegInf,
    /// Limit value; `exact` when known as a rational.
    Finite { enclosure: DyadicInterval, exact: Option<Rational> },
    Unknown,
}

impl Limit {
    fn finite(v: DyadicInterval) -> Limit {
        Limit::Finite { enclosure: v, exact: None }
    }

    fn neg(self) -> Limit {
        match self {
            Limit::PosInf => Limit::NegInf,
            Limit::NegInf => Limit::PosInf,
            Limit::Finite { enclosure, exact } => Limit::Finite { enclosure: enclosure.neg(), exact: exact.map(|r| -r) },
            Limit::Unknown => Limit::Unknown,
        }
    }

    fn sign(&self) -> Option<i32> {
        match self {
            Limit::PosInf => Some(1),
            Limit::NegInf => Some(-1),
            Limit::Finite { enclosure, .. } if enclosure.is_positive() => Some(1),
            Limit::Finite { enclosure, .. } if enclosure.is_negative() => Some(-1),
            _ => None,
        }
    }
}

const LIMIT_PRECISION: u32 = 128;

fn const_limit(e: &Expr) -> Limit {
    match e.evaluate_exact(&Rational::zero()) {
        Ok(ExactEval::Value(v)) => Limit::Finite {
            enclosure: DyadicInterval::from_rational(&v, LIMIT_PRECISION),
            exact: Some(v),
        },
        _ => match eval_interval(e, &DyadicInterval::point_int(0), LIMIT_PRECISION) {
            Ok(v) => Limit::finite(v),
            Err(_) => Limit::Unknown,
        },
    }
}

/// Limit as `x → +∞` (or `-∞`) by structural divergence rules.
fn limit_at_infinity(e: &Expr, positive: bool) -> Limit {
    use Expr::*;
    if e.is_constant() {
        return const_limit(e);
    }
    if let Ok(p) = UniPoly::from_expr(e) {
        return if p.sign_at_infinity(positive) > 0 { Limit::PosInf } else { Limit::NegInf };
    }
    let lim = |a: &Expr| limit_at_infinity(a, positive);
    match e {
        Neg(a) => lim(a).neg(),
        Add(a, b) => add_limits(lim(a), lim(b)),
        Sub(a, b) => add_limits(lim(a), lim(b).neg()),
        Mul(a, b) => mul_limits(lim(a), lim(b)),
        Div(a, c) if c.is_constant() => match (lim(a), constant_sign(c)) {
            (Limit::PosInf, Some(s)) if s != 0 => if s > 0 { Limit::PosInf } else { Limit::NegInf },
            (Limit::NegInf, Some(s)) if s != 0 => if s > 0 { Limit::NegInf } else { Limit::PosInf },
            _ => Limit::Unknown,
        },
        Root(n, a) => match lim(a) {
            Limit::PosInf => Limit::PosInf,
            Limit::NegInf if n % 2 == 1 => Limit::NegInf,
            _ => Limit::Unknown,
        },
        Pow(a, k) if *k > 0 => match lim(a) {
            Limit::PosInf => Limit::PosInf,
            Limit::NegInf => if k % 2 == 0 { Limit::PosInf } else { Limit::NegInf },
            _ => Limit::Unknown,
        },
        Pow(a, k) if *k < 0 => match lim(a) {
            Limit::PosInf | Limit::NegInf => Limit::Finite {
                enclosure: DyadicInterval::point_int(0),
                exact: Some(Rational::zero()),
            },
            _ => Limit::Unknown,
        },
        Exp(a) => match lim(a) {
            Limit::PosInf => Limit::PosInf,
            Limit::NegInf => Limit::Finite { enclosure: DyadicInterval::point_int(0), exact: Some(Rational::zero()) },
            Limit::Finite { enclosure, .. } => Limit::finite(enclosure.exp()),
            Limit::Unknown => Limit::Unknown,
        },
        Ln(a) => match lim(a) {
            Limit::PosInf => Limit::PosInf,
            _ => Limit::Unknown,
        },
        _ => Limit::Unknown,
    }
}

fn add_limits(a: Limit, b: Limit) -> Limit {
    use Limit::*;
    match (a, b) {
        (Unknown, _) | (_, Unknown) => Unknown,
        (PosInf, NegInf) | (NegInf, PosInf) => Unknown,
        (PosInf, _) | (_, PosInf) => PosInf,
        (NegInf, _) | (_, NegInf) => NegInf,
        (Finite { enclosure: x, exact: ex }, Finite { enclosure: y, exact: ey }) => Finite {
            enclosure: x.add(&y),
            exact: ex.zip(ey).map(|(a, b)| a + b),
        },
    }
}

fn mul_limits(a: Limit, b: Limit) -> Limit {
    use Limit::*;
    match (&a, &b) {
        (Finite { enclosure: x, exact: ex }, Finite { enclosure: y, exact: ey }) => Finite {
            enclosure: x.mul(y),
            exact: ex.clone().zip(ey.clone()).map(|(a, b)| a * b),
        },
        (Unknown, _) | (_, Unknown) => Unknown,
        _ => match (a.sign(), b.sign()) {
            (Some(s), Some(t)) => if s * t > 0 { PosInf } else { NegInf },
            _ => Unknown,
        },
    }
}

/// Value or limit of `f` at a finite endpoint, and whether it is attained.
fn endpoint_limit(f: &Expr, end: &Endpoint, positive_side: bool) -> (Limit, bool) {
    match end {
        Endpoint::Infinite => (limit_at_infinity(f, positive_side), false),
        Endpoint::Closed(a) | Endpoint::Open(a) => {
            let attained = end.is_closed();
            if !f.natural_domain().domain.contains(a) {
                return (Limit::Unknown, false);
            }
            let lim = match f.evaluate_exact(a) {
                Ok(ExactEval::Value(v)) => Limit::Finite {
                    enclosure: DyadicInterval::from_rational(&v, LIMIT_PRECISION),
                    exact: Some(v),
                },
                _ => match eval_interval(f, &DyadicInterval::from_rational(a, LIMIT_PRECISION), LIMIT_PRECISION) {
                    Ok(v) => Limit::finite(v),
                    Err(_) => Limit::Unknown,
                },
            };
            (lim, attained)
        }
    }
}

/// `Some(-1)` if the limit is certified below `t`, `Some(1)` above,
/// `Some(0)` for an exact tie.
fn compare(lim: &Limit, t: &DyadicInterval, t_exact: Option<&Rational>) -> Option<i32> {
    match lim {
        Limit::PosInf => Some(1),
        Limit::NegInf => Some(-1),
        Limit::Unknown => None,
        Limit::Finite { enclosure, exact } => {
            if let (Some(a), Some(b)) = (exact, t_exact) {
                return Some(match a.cmp(b) {
                    std::cmp::Ordering::Less => -1,
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Greater => 1,
                });
            }
            if enclosure.strictly_below(t) {
                Some(-1)
            } else if t.strictly_below(enclosure) {
                Some(1)
            } else {
                None
            }
        }
    }
}

/// Outcome of range analysis for a strictly monotone left-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonotoneCount {
    ExactlyOne(DyadicInterval),
    None,
    Unknown,
}

pub(crate) enum MonotoneRoot {
    One(SolutionRep),
    Zero,
    Unknown,
}

fn endpoint_rep(end: &Endpoint) -> SolutionRep {
    SolutionRep::ExactRational(end.value().expect("finite endpoint").clone())
}

pub(crate) fn monotone_root(eq: &Equation, precision: u32) -> Result<MonotoneRoot, SolverError> {
    if eq.rhs.contains_var() {
        return Err(SolverError::PreconditionViolated("right-hand side must be constant"));
    }
    let iv = match eq.domain.intervals() {
        [iv] => iv.clone(),
        [] => return Ok(MonotoneRoot::Zero),
        _ => return Err(SolverError::MultiIntervalDomain),
    };
    let f = &eq.lhs;
    let increasing = match prove_monotone(f, &eq.domain)? {
        Monotonicity::StrictlyIncreasing => true,
        Monotonicity::StrictlyDecreasing => false,
        Monotonicity::Unknown => return Err(SolverError::PreconditionViolated("left-hand side not certified monotone")),
    };
    let t_exact = eq.rhs.evaluate_exact(&Rational::zero()).ok().and_then(|v| v.value().cloned());
    let t = match &t_exact {
        Some(r) => DyadicInterval::from_rational(r, LIMIT_PRECISION),
        None => match eval_interval(&eq.rhs, &DyadicInterval::point_int(0), LIMIT_PRECISION) {
            Ok(v) => v,
            Err(_) => return Ok(MonotoneRoot::Unknown),
        },
    };
    let (lo, lo_attained) = endpoint_limit(f, &iv.lower, false);
    let (hi, hi_attained) = endpoint_limit(f, &iv.upper, true);
    // range runs from `bottom` to `top`
    let ((bottom, b_att, b_end), (top, t_att, t_end)) = if increasing {
        ((lo, lo_attained, &iv.lower), (hi, hi_attained, &iv.upper))
    } else {
        ((hi, hi_attained, &iv.upper), (lo, lo_attained, &iv.lower))
    };
    let cb = compare(&bottom, &t, t_exact.as_ref());
    let ct = compare(&top, &t, t_exact.as_ref());
    if cb == Some(0) {
        return Ok(if b_att { MonotoneRoot::One(endpoint_rep(b_end)) } else { MonotoneRoot::Zero });
    }
    if ct == Some(0) {
        return Ok(if t_att { MonotoneRoot::One(endpoint_rep(t_end)) } else { MonotoneRoot::Zero });
    }
    match (cb, ct) {
        (Some(1), _) | (_, Some(-1)) => Ok(MonotoneRoot::Zero),
        (Some(-1), Some(1)) => {
            let v = match InverseFunctionValue::new(f.clone(), eq.domain.clone(), eq.rhs.clone()) {
                Ok(v) => v,
                Err(_) => return Ok(MonotoneRoot::Unknown),
            };
            match inverse_value(&v, precision) {
                Ok(enclosure) => Ok(MonotoneRoot::One(SolutionRep::CertifiedRoot(super::CertifiedRoot::Inverse {
                    value: v,
                    enclosure,
                    isolated: None,
                }))),
                Err(_) => Ok(MonotoneRoot::Unknown),
            }
        }
        _ => Ok(MonotoneRoot::Unknown),
    }
}

/// Number of solutions of `lhs = a` for a constant `a` and a certified
/// strictly monotone `lhs` on a single interval, from the range of `lhs`.
/// An attained endpoint value counts as a solution.
pub fn count_solutions_monotone(eq: &Equation, precision: u32) -> Result<MonotoneCount, SolverError> {
    Ok(match monotone_root(eq, precision)? {
        MonotoneRoot::One(rep) => MonotoneCount::ExactlyOne(rep.enclosure(precision)),
        MonotoneRoot::Zero => MonotoneCount::None,
        MonotoneRoot::Unknown => MonotoneCount::Unknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::int;
    use crate::parse::parse_expression;

    fn p(s: &str) -> Expr {
        parse_expression(s).unwrap()
    }

    #[test]
    fn limits_follow_leading_terms() {
        assert!(matches!(limit_at_infinity(&p("x^3 - 100*x"), true), Limit::PosInf));
        assert!(matches!(limit_at_infinity(&p("x^3 - 100*x"), false), Limit::NegInf));
        assert!(matches!(limit_at_infinity(&p("exp(x) + sqrt(x)"), true), Limit::PosInf));
        assert!(matches!(limit_at_infinity(&p("exp(x) + 3"), false), Limit::Finite { .. }));
        assert!(matches!(limit_at_infinity(&p("exp(x) - x^2"), true), Limit::Unknown));
    }

    #[test]
    fn limit_enclosures_are_honest() {
        match limit_at_infinity(&p("exp(x) + 3"), false) {
            Limit::Finite { enclosure, exact } => {
                assert!(enclosure.contains_rational(&int(3)));
                assert_eq!(exact, Some(int(3)));
            }
            other => panic!("{other:?}"),
        }
    }
}
