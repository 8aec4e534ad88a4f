use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use super::{CertifiedRoot, SolutionRep};
use crate::algclass::sample_points;
use crate::expr::{Domain, DomainCondition, Endpoint, Equation, Expr, Rational};
use crate::interval::{eval_interval, DyadicInterval};
use crate::poly::{QuadraticSurd, RationalFunction, UniPoly};
use crate::rewrite::{self, SideCondition, SolutionRelation, Trace};

/// Why a candidate is not a solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    OutsideDomain,
    /// A pole of the original equation.
    Pole,
    SideCondition(SideCondition),
    /// Enclosure of `lhs - rhs` at the candidate, excluding 0.
    Residual(DyadicInterval),
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::OutsideDomain => f.write_str("outside the domain"),
            Rejection::Pole => f.write_str("denominator vanishes"),
            Rejection::SideCondition(c) => write!(f, "side condition {} violated", compact_condition(c)),
            Rejection::Residual(v) => write!(f, "lhs - rhs in {v}, which excludes 0"),
        }
    }
}

/// `3x-8 <= 0` style: no spaces, no `*` between a numeral and `x`.
pub fn compact_condition(c: &DomainCondition) -> String {
    let body: String = crate::parse::render_expr(&c.expr).chars().filter(|ch| *ch != ' ').collect();
    let mut out = String::new();
    let chars: Vec<char> = body.chars().collect();
    for (i, ch) in chars.iter().enumerate() {
        let joins = *ch == '*'
            && i > 0
            && chars[i - 1].is_ascii_digit()
            && chars.get(i + 1) == Some(&'x');
        if !joins {
            out.push(*ch);
        }
    }
    format!("{out} {} 0", c.pred.symbol())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    Verified,
    Rejected(Rejection),
    /// Not refuted, not proved; carries the reason.
    Inconclusive(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityResult {
    Identity,
    NotIdentity,
    Unknown,
}

/// Whether `lhs = rhs` holds on the whole domain.
pub fn identity_check(eq: &Equation) -> IdentityResult {
    if eq.lhs.fold() == eq.rhs.fold() {
        return IdentityResult::Identity;
    }
    if let (Some(a), Some(b)) = (RationalFunction::from_expr(&eq.lhs), RationalFunction::from_expr(&eq.rhs)) {
        if a.numer.mul(&b.denom).sub(&b.numer.mul(&a.denom)).is_zero() {
            return IdentityResult::Identity;
        }
    }
    let diff = eq.difference();
    for t in sample_points(&eq.domain, 8) {
        if matches!(rewrite::sign_at(&diff, &t), Some(s) if s != 0) {
            return IdentityResult::NotIdentity;
        }
    }
    IdentityResult::Unknown
}

fn precisions(max_precision: u32) -> impl Iterator<Item = u32> {
    std::iter::successors(Some(64u32), move |p| if *p < max_precision { Some((p * 2).min(max_precision)) } else { None })
}

fn sign_of(v: &DyadicInterval) -> Option<i32> {
    if v.is_positive() {
        Some(1)
    } else if v.is_negative() {
        Some(-1)
    } else {
        None
    }
}

/// Sign of `e` at the value of `c`. Exact for rationals and for
/// polynomials at quadratic surds or isolated roots.
pub(crate) fn sign_at_rep(e: &Expr, c: &SolutionRep, max_precision: u32) -> Option<i32> {
    if let SolutionRep::ExactRational(r) = c {
        return rewrite::sign_at(e, r);
    }
    if let Ok(q) = UniPoly::from_expr(e) {
        match c {
            SolutionRep::QuadraticSurd(s) => return Some(q.eval_quad(&s.elem()).sign()),
            SolutionRep::CertifiedRoot(CertifiedRoot::Isolated(root))
            | SolutionRep::CertifiedRoot(CertifiedRoot::Inverse { isolated: Some(root), .. }) => {
                if root.is_root_of(&q) {
                    return Some(0);
                }
                let mut r = root.clone();
                for _ in 0..4 * max_precision {
                    if let Some(s) = sign_of(&q.eval_interval(&r.interval)) {
                        return Some(s);
                    }
                    r = r.bisect();
                }
                return None;
            }
            _ => {}
        }
    }
    for p in precisions(max_precision) {
        let x = c.enclosure(p);
        if let Ok(v) = eval_interval(e, &x, p) {
            if let Some(s) = sign_of(&v) {
                return Some(s);
            }
        }
    }
    None
}

/// Order of the value of `c` relative to the rational `a`.
fn cmp_rational(c: &SolutionRep, a: &Rational, max_precision: u32) -> Option<Ordering> {
    match c {
        SolutionRep::ExactRational(r) => Some(r.cmp(a)),
        SolutionRep::QuadraticSurd(s) => s.cmp_value(&QuadraticSurd::rational(a.clone())),
        _ => {
            let s = sign_at_rep(&(Expr::x() - Expr::Lit(a.clone())), c, max_precision)?;
            Some(s.cmp(&0))
        }
    }
}

pub(crate) fn in_domain(c: &SolutionRep, d: &Domain, max_precision: u32) -> Option<bool> {
    let mut undecided = false;
    for iv in d.intervals() {
        let lower = match &iv.lower {
            Endpoint::Infinite => Some(true),
            Endpoint::Closed(a) => cmp_rational(c, a, max_precision).map(|o| o != Ordering::Less),
            Endpoint::Open(a) => cmp_rational(c, a, max_precision).map(|o| o == Ordering::Greater),
        };
        let upper = match &iv.upper {
            Endpoint::Infinite => Some(true),
            Endpoint::Closed(b) => cmp_rational(c, b, max_precision).map(|o| o != Ordering::Greater),
            Endpoint::Open(b) => cmp_rational(c, b, max_precision).map(|o| o == Ordering::Less),
        };
        match (lower, upper) {
            (Some(true), Some(true)) => return Some(true),
            (Some(false), _) | (_, Some(false)) => {}
            _ => undecided = true,
        }
    }
    if undecided {
        None
    } else {
        Some(false)
    }
}

/// Membership of `c` in the domain of `eq`, with natural-domain conditions
/// tested at the point itself.
pub(crate) fn in_equation_domain(eq: &Equation, c: &SolutionRep, max_precision: u32) -> Option<bool> {
    if !in_domain(c, eq.declared_domain(), max_precision)? {
        return Some(false);
    }
    let mut undecided = false;
    for cond in eq.domain_conditions() {
        match sign_at_rep(&cond.expr, c, max_precision) {
            Some(s) if !cond.pred.holds_for_sign(s) => return Some(false),
            Some(_) => {}
            None => undecided = true,
        }
    }
    if undecided {
        None
    } else {
        Some(true)
    }
}

/// Whether `c` is an exact root of the polynomial `p`; `None` when `c`
/// carries no algebraic description.
pub(crate) fn is_exact_root(c: &SolutionRep, p: &UniPoly) -> Option<bool> {
    match c {
        SolutionRep::ExactRational(r) => Some(p.eval(r).is_zero()),
        SolutionRep::QuadraticSurd(s) => Some(p.eval_quad(&s.elem()).is_zero()),
        SolutionRep::CertifiedRoot(CertifiedRoot::Isolated(root))
        | SolutionRep::CertifiedRoot(CertifiedRoot::Inverse { isolated: Some(root), .. }) => Some(root.is_root_of(p)),
        _ => None,
    }
}

fn residual(eq: &Equation, c: &SolutionRep, max_precision: u32) -> Option<DyadicInterval> {
    let diff = eq.difference();
    for p in precisions(max_precision) {
        if let Ok(v) = eval_interval(&diff, &c.enclosure(p), p) {
            if !v.contains_zero() {
                return Some(v);
            }
        }
    }
    None
}

/// Checks a candidate produced through `trace` against the original
/// equation.
///
/// A candidate is verified only by proof: it is an exact root of the final
/// equation of the trace and every side condition along the trace holds
/// at it, so each step is reversible there.
pub fn verify_candidate(eq: &Equation, c: &SolutionRep, trace: &Trace, max_precision: u32) -> Verification {
    let mut doubts: Vec<String> = Vec::new();
    match in_equation_domain(eq, c, max_precision) {
        Some(false) => return Verification::Rejected(Rejection::OutsideDomain),
        Some(true) => {}
        None => doubts.push("domain membership undecided".to_string()),
    }
    for cond in trace.side_conditions() {
        match sign_at_rep(&cond.expr, c, max_precision) {
            Some(s) if !cond.pred.holds_for_sign(s) => {
                return Verification::Rejected(Rejection::SideCondition(cond.clone()));
            }
            Some(_) => {}
            None => doubts.push(format!("side condition {} undecided", compact_condition(cond))),
        }
    }
    let last = trace.last_equation().unwrap_or(eq);
    let exact = UniPoly::from_expr(&last.difference()).ok().and_then(|p| is_exact_root(c, &p));
    let chain_ok = matches!(trace.overall(), SolutionRelation::Equivalent | SolutionRelation::Superset);
    if doubts.is_empty() && chain_ok && exact == Some(true) {
        return Verification::Verified;
    }
    if let Some(v) = residual(eq, c, max_precision) {
        return Verification::Rejected(Rejection::Residual(v));
    }
    if exact == Some(false) {
        doubts.push("not a root of the final equation".to_string());
    }
    if doubts.is_empty() {
        doubts.push("numerically consistent, not proved".to_string());
    }
    Verification::Inconclusive(doubts.join("; "))
}
