use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::monotone::{monotone_root, MonotoneRoot};
use super::polynomial::{kth_roots, real_roots, sort_reps};
use super::verify::{identity_check, in_domain, in_equation_domain, is_exact_root, verify_candidate};
use super::{IdentityResult, Rejection, SolutionRep, SolutionSet, SolveConfig, SolveReport, Verification};
use crate::expr::{Branch, Domain, Equation, Expr, Rational};
use crate::poly::{substitution_reduce, RationalFunction, UniPoly};
use crate::rewrite::{apply_step, Injective, RadSum, Rule, Trace};
use crate::special::cmp_branch_point;

pub(super) fn identity(eq: &Equation, report: &mut SolveReport) -> bool {
    if identity_check(eq) == IdentityResult::Identity {
        report.solutions = SolutionSet::Identity;
        report.notes.push("both sides agree on the whole domain".to_string());
        return true;
    }
    false
}

fn push(trace: &mut Trace, eq: &Equation, rule: Rule) -> Option<Equation> {
    let step = apply_step(eq, rule).ok()?;
    let out = step.output.clone();
    trace.push(step).ok()?;
    Some(out)
}

/// Keeps the candidates lying in the domain of `eq`.
fn keep_in_domain(eq: &Equation, reps: Vec<SolutionRep>, cfg: &SolveConfig, report: &mut SolveReport) -> Vec<SolutionRep> {
    let mut out = Vec::new();
    for c in reps {
        match in_equation_domain(eq, &c, cfg.max_precision) {
            Some(true) => out.push(c),
            Some(false) => report.rejected.push((c, Rejection::OutsideDomain)),
            None => report.inconclusive.push((c, "domain membership undecided".to_string())),
        }
    }
    out
}

fn settle(report: &mut SolveReport, trace: Trace, reps: Vec<SolutionRep>) {
    report.trace = trace;
    if reps.is_empty() && !report.inconclusive.is_empty() {
        report.solutions = SolutionSet::Unsolved("no candidate could be decided".to_string());
        return;
    }
    if !report.inconclusive.is_empty() {
        report.notes.push("undecided candidates are listed separately".to_string());
    }
    if reps.iter().any(|r| matches!(r, SolutionRep::CertifiedRoot(_))) {
        report.notes.push("no radical form produced".to_string());
    }
    report.solutions = SolutionSet::from_reps(reps);
}

pub(super) fn polynomial(eq: &Equation, cfg: &SolveConfig, report: &mut SolveReport) -> bool {
    let Ok(p) = UniPoly::from_expr(&eq.difference()) else { return false };
    if p.is_zero() {
        report.solutions = SolutionSet::Identity;
        return true;
    }
    let mut trace = Trace::new();
    let mut cur = eq.clone();
    if let Ok(step) = apply_step(eq, Rule::Expand) {
        if step.output.lhs != eq.lhs || step.output.rhs != eq.rhs {
            cur = step.output.clone();
            trace.push(step).expect("first step");
        }
    }
    let p = p.primitive();
    let deg = p.degree().unwrap_or(0);
    if deg >= 3 && eq.domain.is_real_line() {
        if let Ok(Some((k, q))) = substitution_reduce(&p) {
            if q.degree().is_some_and(|d| d <= 2) {
                if let Some(reduced) = push(&mut trace, &cur, Rule::Substitute(k as u32)) {
                    let ys = keep_in_domain(&reduced, real_roots(&q, cfg.precision), cfg, report);
                    let mut xs: Vec<SolutionRep> = ys.iter().flat_map(|y| kth_roots(y, k as u32)).collect();
                    sort_reps(&mut xs, cfg.precision);
                    report.notes.push(format!("back-substitution x^{k} = y"));
                    settle(report, trace, xs);
                    return true;
                }
            }
        }
    }
    let reps = keep_in_domain(eq, real_roots(&p, cfg.precision), cfg, report);
    settle(report, trace, reps);
    true
}

pub(super) fn rational(eq: &Equation, cfg: &SolveConfig, report: &mut SolveReport) -> bool {
    let Some(rf) = RationalFunction::from_expr(&eq.difference()) else { return false };
    if rf.is_polynomial() || rf.numer.is_zero() {
        return false;
    }
    let mut trace = Trace::new();
    if push(&mut trace, eq, Rule::ClearDenominators).is_none() {
        return false;
    }
    let mut candidates = Vec::new();
    for c in real_roots(&rf.numer, cfg.precision) {
        if is_exact_root(&c, &rf.denom) == Some(true) {
            report.rejected.push((c, Rejection::Pole));
        } else {
            candidates.push(c);
        }
    }
    let reps = keep_in_domain(eq, candidates, cfg, report);
    settle(report, trace, reps);
    true
}

/// One side a polynomial, the other radicals only.
fn isolated_shape(eq: &Equation) -> bool {
    match (RadSum::from_expr(&eq.lhs), RadSum::from_expr(&eq.rhs)) {
        (Some(l), Some(r)) => (l.is_polynomial() && r.poly.is_zero()) || (r.is_polynomial() && l.poly.is_zero()),
        _ => false,
    }
}

fn radical_difference(eq: &Equation) -> Option<RadSum> {
    Some(RadSum::from_expr(&eq.lhs)?.add(&RadSum::from_expr(&eq.rhs)?.scale(&-Rational::one())))
}

pub(super) fn radical(eq: &Equation, cfg: &SolveConfig, report: &mut SolveReport) -> bool {
    let Some(d) = radical_difference(eq) else { return false };
    if d.is_polynomial() {
        return false;
    }
    let rounds = d.terms.len();
    let mut trace = Trace::new();
    let mut cur = eq.clone();
    // each round removes at least one radical
    for _ in 0..rounds {
        let Some(d) = radical_difference(&cur) else { return false };
        if d.is_polynomial() {
            break;
        }
        if d.terms.len() > 2 {
            return false;
        }
        if !isolated_shape(&cur) {
            match push(&mut trace, &cur, Rule::IsolateRadical) {
                Some(next) => cur = next,
                None => return false,
            }
        }
        let rule = match d.terms.as_slice() {
            ts if ts.iter().all(|t| t.index == 2) => Rule::SquareBoth,
            [t] if t.index % 2 == 1 => Rule::ApplyInjective(Injective::OddPower(t.index)),
            _ => return false,
        };
        match push(&mut trace, &cur, rule) {
            Some(next) => cur = next,
            None => return false,
        }
    }
    if !radical_difference(&cur).is_some_and(|d| d.is_polynomial()) {
        return false;
    }
    let Some(last) = push(&mut trace, &cur, Rule::Expand) else { return false };
    let Ok(p) = UniPoly::from_expr(&last.difference()) else { return false };
    if p.is_zero() {
        report.notes.push("squaring produced an identity".to_string());
        return false;
    }
    let mut reps = Vec::new();
    for c in real_roots(&p, cfg.precision) {
        match verify_candidate(eq, &c, &trace, cfg.max_precision) {
            Verification::Verified => reps.push(c),
            Verification::Rejected(why) => report.rejected.push((c, why)),
            Verification::Inconclusive(why) => report.inconclusive.push((c, why)),
        }
    }
    settle(report, trace, reps);
    true
}

/// `(a, b)` with `e = a·x + b` and `a ≠ 0`.
fn linear(e: &Expr) -> Option<(Rational, Rational)> {
    let p = UniPoly::from_expr(e).ok()?;
    if p.degree() != Some(1) {
        return None;
    }
    Some((p.coeff(1), p.coeff(0)))
}

/// `(t - b) / a`.
fn unshift(t: Expr, a: &Rational, b: &Rational) -> Expr {
    let t = if b.is_zero() { t } else { t - Expr::Lit(b.clone()) };
    if a.is_one() {
        t
    } else {
        t / Expr::Lit(a.clone())
    }
}

fn exact_constant(c: &Expr) -> Option<Rational> {
    c.evaluate_exact(&Rational::zero()).ok()?.value().cloned()
}

fn finish_closed(eq: &Equation, reps: Vec<SolutionRep>, cfg: &SolveConfig, report: &mut SolveReport, trace: Trace) {
    let mut out = Vec::new();
    for c in reps {
        match in_domain(&c, &eq.domain, cfg.max_precision) {
            Some(true) => out.push(c),
            Some(false) => report.rejected.push((c, Rejection::OutsideDomain)),
            None => report.inconclusive.push((c, "domain membership undecided".to_string())),
        }
    }
    sort_reps(&mut out, cfg.precision);
    settle(report, trace, out);
}

/// `exp(u) = c` with `u` linear.
fn exp_equals(eq: &Equation, u: &Expr, c: &Expr, cfg: &SolveConfig, report: &mut SolveReport) -> bool {
    let Some((a, b)) = linear(u) else { return false };
    match crate::rewrite::sign_on(c, &Domain::real_line()) {
        s if s.is_nonpositive() => {
            report.notes.push("exp takes only positive values".to_string());
            report.solutions = SolutionSet::Empty;
            return true;
        }
        s if s.is_positive() => {}
        _ => return false,
    }
    let mut trace = Trace::new();
    if push(&mut trace, eq, Rule::ApplyInjective(Injective::Ln)).is_none() {
        return false;
    }
    let x = unshift(c.clone().ln(), &a, &b);
    finish_closed(eq, vec![SolutionRep::ClosedForm(x)], cfg, report, trace);
    true
}

/// `(u, u)` from `u·exp(u)` in either order.
fn product_form(e: &Expr) -> Option<&Expr> {
    if let Expr::Mul(p, q) = e {
        match (p.as_ref(), q.as_ref()) {
            (u, Expr::Exp(v)) | (Expr::Exp(v), u) if u.fold() == v.fold() => return Some(u),
            _ => {}
        }
    }
    None
}

/// `u·exp(u) = c` with `u` linear and `c` rational.
fn lambert_product(eq: &Equation, u: &Expr, c: &Expr, cfg: &SolveConfig, report: &mut SolveReport) -> bool {
    let (Some((a, b)), Some(cv)) = (linear(u), exact_constant(c)) else { return false };
    let us: Vec<SolutionRep> = if cv.is_zero() {
        vec![SolutionRep::ExactRational(Rational::zero())]
    } else if cv.is_positive() {
        vec![SolutionRep::ClosedForm(Expr::lambert_w(Branch::Principal, c.clone()))]
    } else {
        match cmp_branch_point(&cv) {
            Ordering::Less => {
                report.notes.push("u*exp(u) >= -1/e for every real u".to_string());
                report.solutions = SolutionSet::Empty;
                return true;
            }
            Ordering::Equal => vec![SolutionRep::ExactRational(-Rational::one())],
            Ordering::Greater => vec![
                SolutionRep::ClosedForm(Expr::lambert_w(Branch::Principal, c.clone())),
                SolutionRep::ClosedForm(Expr::lambert_w(Branch::Lower, c.clone())),
            ],
        }
    };
    let xs = us
        .into_iter()
        .map(|w| match w {
            SolutionRep::ExactRational(v) => SolutionRep::ExactRational((v - &b) / &a),
            SolutionRep::ClosedForm(e) => SolutionRep::ClosedForm(unshift(e, &a, &b)),
            other => other,
        })
        .collect();
    report.notes.push("u*exp(u) = c gives u = W(k, c)".to_string());
    finish_closed(eq, xs, cfg, report, Trace::new());
    true
}

/// `exp(x) = x + b`: multiplying by `exp(-(x + b))` and putting
/// `u = -(x + b)` gives `u·exp(u) = -exp(-b)`, so `x = -W(k, -exp(-b)) - b`.
fn lambert_shift(eq: &Equation, b: &Rational, cfg: &SolveConfig, report: &mut SolveReport) -> bool {
    let shift = UniPoly::new(vec![-b.clone(), -Rational::one()]).to_expr();
    let mut trace = Trace::new();
    if push(&mut trace, eq, Rule::MulBoth(shift.exp())).is_none() {
        return false;
    }
    report.notes.push(format!(
        "with u = -(x + {}): u*exp(u) = -exp({})",
        crate::parse::render_rational(b),
        crate::parse::render_rational(&-b.clone())
    ));
    let one = Rational::one();
    let reps = match b.cmp(&one) {
        Ordering::Less => {
            report.notes.push("-exp(-b) < -1/e: no real branch applies".to_string());
            Vec::new()
        }
        Ordering::Equal => vec![SolutionRep::ExactRational(Rational::zero())],
        Ordering::Greater => {
            let z = -(Expr::Lit(-b.clone()).exp());
            [Branch::Principal, Branch::Lower]
                .into_iter()
                .map(|k| {
                    let x = -Expr::lambert_w(k, z.clone());
                    SolutionRep::ClosedForm(if b.is_zero() { x } else { x - Expr::Lit(b.clone()) })
                })
                .collect()
        }
    };
    finish_closed(eq, reps, cfg, report, trace);
    true
}

pub(super) fn exp_lambert(eq: &Equation, cfg: &SolveConfig, report: &mut SolveReport) -> bool {
    for (a, c) in [(&eq.lhs, &eq.rhs), (&eq.rhs, &eq.lhs)] {
        if c.contains_var() {
            continue;
        }
        if let Expr::Exp(u) = a {
            return exp_equals(eq, u, c, cfg, report);
        }
        if let Some(u) = product_form(a) {
            return lambert_product(eq, u, c, cfg, report);
        }
    }
    if let Expr::Exp(u) = &eq.lhs {
        if **u == Expr::Var {
            if let Some((a, b)) = linear(&eq.rhs) {
                if a.is_one() {
                    return lambert_shift(eq, &b, cfg, report);
                }
            }
        }
    }
    false
}

pub(super) fn monotone(eq: &Equation, cfg: &SolveConfig, report: &mut SolveReport) -> bool {
    let (f, target) = if !eq.rhs.contains_var() {
        (eq.lhs.clone(), eq.rhs.clone())
    } else if !eq.lhs.contains_var() {
        (eq.rhs.clone(), eq.lhs.clone())
    } else {
        (eq.difference(), Expr::int(0))
    };
    let mut reps = Vec::new();
    for iv in eq.domain.intervals() {
        let piece = Equation::new(f.clone(), target.clone(), Domain::from_interval(iv.clone()));
        match monotone_root(&piece, cfg.precision) {
            Ok(MonotoneRoot::One(r)) => reps.push(r),
            Ok(MonotoneRoot::Zero) => {}
            _ => return false,
        }
    }
    report.notes.push("strictly monotone on each domain interval; range analysis".to_string());
    report.trace = Trace::new();
    report.solutions = SolutionSet::from_reps(reps);
    true
}
