use num_traits::{One, Signed, Zero};

use super::{CertifiedRoot, SolutionRep};
use crate::expr::{rational_root, Domain, Endpoint, Expr, Rational, RealInterval};
use crate::poly::{quadratic_solve, rational_roots, sturm_isolate, IsolatedRoot, QuadraticSurd, UniPoly};
use crate::special::InverseFunctionValue;

fn overlaps(a: &IsolatedRoot, b: &IsolatedRoot) -> bool {
    !(a.upper() < b.lower() || b.upper() < a.lower())
}

/// Refines two isolating intervals of distinct numbers until disjoint.
fn separate(a: &mut IsolatedRoot, b: &mut IsolatedRoot) {
    while overlaps(a, b) {
        *a = a.bisect();
        *b = b.bisect();
    }
}

fn integer_in(lo: &Rational, hi: &Rational) -> Option<Rational> {
    let t = Rational::from_integer(lo.ceil().to_integer());
    (t <= *hi).then_some(t)
}

fn dyadic_in(lo: &Rational, hi: &Rational) -> Rational {
    let mut scale = Rational::one();
    loop {
        scale *= Rational::from_integer(2.into());
        let t = (lo * &scale).ceil() / &scale;
        if t <= *hi {
            return t;
        }
    }
}

/// A short rational in `[lo(c), hi(r)]` after refining, preferring
/// integers. `below` says whether the critical point `c` lies below `r`.
fn boundary(c: &IsolatedRoot, r: &IsolatedRoot, below: bool) -> Rational {
    let (mut c, mut r) = (c.clone(), r.clone());
    separate(&mut c, &mut r);
    let ends = |c: &IsolatedRoot, r: &IsolatedRoot| if below { (c.upper(), r.lower()) } else { (r.upper(), c.lower()) };
    for _ in 0..24 {
        let (lo, hi) = ends(&c, &r);
        if let Some(t) = integer_in(&lo, &hi) {
            return t;
        }
        r = r.bisect();
        c = c.bisect();
    }
    let (lo, hi) = ends(&c, &r);
    dyadic_in(&lo, &hi)
}

/// The open interval between the critical points of `p` adjacent to the
/// simple root `r`, with short rational ends.
fn monotone_branch(p: &UniPoly, r: &IsolatedRoot) -> Option<Domain> {
    let dp = p.derivative();
    if dp.is_zero() || r.is_root_of(&dp) {
        return None;
    }
    let mut below: Option<IsolatedRoot> = None;
    let mut above: Option<IsolatedRoot> = None;
    let crit = if dp.is_constant() { Vec::new() } else { sturm_isolate(&dp.square_free()).ok()? };
    for c in crit {
        let (mut c2, mut r2) = (c.clone(), r.clone());
        separate(&mut c2, &mut r2);
        if c2.upper() < r2.lower() {
            below = Some(c);
        } else if above.is_none() {
            above = Some(c);
        }
    }
    let lower = match &below {
        Some(c) => Endpoint::Open(boundary(c, r, true)),
        None => Endpoint::Infinite,
    };
    let upper = match &above {
        Some(c) => Endpoint::Open(boundary(c, r, false)),
        None => Endpoint::Infinite,
    };
    Some(Domain::from_interval(RealInterval::new(lower, upper)))
}

/// An irrational root of `p` as the value at 0 of the inverse of `p` on a
/// branch where `p` is strictly monotone, falling back to the bare
/// isolating interval.
fn certified(p: &UniPoly, r: IsolatedRoot, precision: u32) -> SolutionRep {
    if let Some(branch) = monotone_branch(p, &r) {
        if let Ok(value) = InverseFunctionValue::new(p.to_expr(), branch, Expr::int(0)) {
            let enclosure = r.enclosure(precision);
            return SolutionRep::CertifiedRoot(CertifiedRoot::Inverse { value, enclosure, isolated: Some(r) });
        }
    }
    SolutionRep::CertifiedRoot(CertifiedRoot::Isolated(r))
}

/// All distinct real roots of a nonzero polynomial, ascending: rationals
/// exactly, quadratic irrationals as surds, the rest as certified roots.
pub(crate) fn real_roots(p: &UniPoly, precision: u32) -> Vec<SolutionRep> {
    if p.is_zero() || p.is_constant() {
        return Vec::new();
    }
    let p = p.primitive();
    let mut rest = p.square_free();
    let mut out: Vec<SolutionRep> = Vec::new();
    for r in rational_roots(&rest).unwrap_or_default() {
        rest = rest.div_rem(&UniPoly::new(vec![-r.clone(), Rational::one()])).0;
        out.push(SolutionRep::ExactRational(r));
    }
    match rest.degree() {
        Some(1) | Some(2) => {
            for s in quadratic_solve(&rest).unwrap_or_default() {
                out.push(SolutionRep::QuadraticSurd(s));
            }
        }
        Some(_) => {
            for r in sturm_isolate(&rest).unwrap_or_default() {
                out.push(certified(&p, r, precision));
            }
        }
        None => {}
    }
    sort_reps(&mut out, precision);
    out
}

pub(crate) fn sort_reps(reps: &mut [SolutionRep], precision: u32) {
    let key = |r: &SolutionRep| r.enclosure(precision).midpoint_rational().unwrap_or_default();
    reps.sort_by_cached_key(key);
}

/// Real solutions `x` of `x^k = y` for a solution `y`.
pub(crate) fn kth_roots(y: &SolutionRep, k: u32) -> Vec<SolutionRep> {
    let odd = k % 2 == 1;
    match y {
        SolutionRep::ExactRational(v) => {
            if v.is_zero() {
                return vec![SolutionRep::ExactRational(Rational::zero())];
            }
            if v.is_negative() && !odd {
                return Vec::new();
            }
            let base = if let Some(r) = rational_root(v, k) {
                SolutionRep::ExactRational(r)
            } else {
                SolutionRep::ClosedForm(Expr::Lit(v.clone()).root(k))
            };
            with_negative(base, odd)
        }
        SolutionRep::QuadraticSurd(s) => {
            if s.sign() < 0 && !odd {
                return Vec::new();
            }
            with_negative(SolutionRep::ClosedForm(surd_expr(s).root(k)), odd)
        }
        other => {
            let e = match other.to_expr() {
                Some(e) => e,
                None => return Vec::new(),
            };
            with_negative(SolutionRep::ClosedForm(e.root(k)), odd)
        }
    }
}

fn surd_expr(s: &QuadraticSurd) -> Expr {
    s.to_expr()
}

fn with_negative(base: SolutionRep, odd: bool) -> Vec<SolutionRep> {
    if odd {
        return vec![base];
    }
    let neg = match &base {
        SolutionRep::ExactRational(r) => SolutionRep::ExactRational(-r.clone()),
        SolutionRep::ClosedForm(e) => SolutionRep::ClosedForm(-e.clone()),
        other => other.clone(),
    };
    vec![neg, base]
}
