use std::fmt;

use num_traits::{One, Signed, Zero};

use super::SpecialError;
use crate::expr::{Domain, Endpoint, ExactEval, Expr, Rational};
use crate::interval::{eval_interval, DyadicInterval};
use crate::solver::{prove_monotone, Monotonicity};

/// The unique `t` in `branch_domain` with `function(t) = target`, where the
/// function is certified strictly monotone on `branch_domain`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseFunctionValue {
    function: Expr,
    branch_domain: Domain,
    target: Expr,
    increasing: bool,
}

impl InverseFunctionValue {
    pub fn new(function: Expr, branch_domain: Domain, target: Expr) -> Result<Self, SpecialError> {
        if target.contains_var() {
            return Err(SpecialError::NonConstantTarget);
        }
        let increasing = match prove_monotone(&function, &branch_domain) {
            Ok(Monotonicity::StrictlyIncreasing) => true,
            Ok(Monotonicity::StrictlyDecreasing) => false,
            Ok(Monotonicity::Unknown) => return Err(SpecialError::NotMonotone),
            Err(_) => return Err(SpecialError::MultiIntervalDomain),
        };
        Ok(InverseFunctionValue { function, branch_domain, target, increasing })
    }

    pub fn function(&self) -> &Expr {
        &self.function
    }

    pub fn branch_domain(&self) -> &Domain {
        &self.branch_domain
    }

    pub fn target(&self) -> &Expr {
        &self.target
    }

    pub fn is_increasing(&self) -> bool {
        self.increasing
    }

    fn residual(&self) -> Expr {
        Expr::Sub(Box::new(self.function.clone()), Box::new(self.target.clone()))
    }
}

impl fmt::Display for InverseFunctionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Z({}) where Z is the inverse of {} on {}",
            crate::parse::render_expr(&self.target),
            crate::parse::render_expr(&self.function),
            self.branch_domain
        )
    }
}

const MAX_SEARCH: u32 = 200;

fn sign_of(v: &Rational) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Certified sign of `g(t)`: exact evaluation first, then two interval passes.
fn sign_at(g: &Expr, t: &Rational, wp: u32) -> Option<i32> {
    if let Ok(ExactEval::Value(v)) = g.evaluate_exact(t) {
        return Some(sign_of(&v));
    }
    for p in [wp, wp * 4] {
        if let Ok(v) = eval_interval(g, &DyadicInterval::from_rational(t, p), p) {
            if v.is_positive() {
                return Some(1);
            }
            if v.is_negative() {
                return Some(-1);
            }
        }
    }
    None
}

enum Bracket {
    Point(Rational),
    At(Rational),
}

/// Searches for a point on one side of the root, walking toward `end`
/// (a finite endpoint) or outward from `start` (an infinite end).
fn find_side(
    g: &Expr,
    start: &Rational,
    end: &Endpoint,
    outward: i32,
    want: i32,
    wp: u32,
) -> Result<Bracket, SpecialError> {
    match end {
        Endpoint::Closed(a) => match sign_at(g, a, wp) {
            Some(0) => Ok(Bracket::Point(a.clone())),
            Some(s) if s == want => Ok(Bracket::At(a.clone())),
            Some(_) => Err(SpecialError::TargetOutsideRange),
            None => Err(SpecialError::Inconclusive),
        },
        Endpoint::Open(a) => {
            let gap = start - a;
            let mut t = start.clone();
            for k in 0..MAX_SEARCH {
                match sign_at(g, &t, wp) {
                    Some(0) => return Ok(Bracket::Point(t)),
                    Some(s) if s == want => return Ok(Bracket::At(t)),
                    _ => {}
                }
                t = a + &gap / Rational::from_integer(num_bigint::BigInt::one() << (k + 1));
            }
            Err(SpecialError::Inconclusive)
        }
        Endpoint::Infinite => {
            let mut step = Rational::one();
            let mut t = start.clone();
            for _ in 0..MAX_SEARCH {
                match sign_at(g, &t, wp) {
                    Some(0) => return Ok(Bracket::Point(t)),
                    Some(s) if s == want => return Ok(Bracket::At(t)),
                    _ => {}
                }
                t = start + &step * Rational::from_integer(outward.into());
                step *= Rational::from_integer(2.into());
            }
            Err(SpecialError::Inconclusive)
        }
    }
}

/// Dyadic point between `a` and `b`, with few bits.
fn split(a: &Rational, b: &Rational) -> Rational {
    let mid = (a + b) / Rational::from_integer(2.into());
    let width = b - a;
    let mut scale = num_bigint::BigInt::one();
    loop {
        let s = Rational::from_integer(scale.clone());
        let cand = (&mid * &s).round() / &s;
        if cand > *a && cand < *b && (&cand - &mid).abs() * Rational::from_integer(4.into()) <= width {
            return cand;
        }
        scale <<= 1;
    }
}

/// Enclosure of the inverse-function value at `precision` bits, by
/// certified bisection.
pub fn inverse_value(v: &InverseFunctionValue, precision: u32) -> Result<DyadicInterval, SpecialError> {
    let [iv] = v.branch_domain.intervals() else {
        return Err(SpecialError::MultiIntervalDomain);
    };
    let g = v.residual();
    let wp = precision + 32;
    let (below, above) = if v.increasing { (-1, 1) } else { (1, -1) };
    let start = iv.sample_point();
    let point = |t: Rational| Ok(DyadicInterval::from_rational(&t, precision));
    let mut lo = match find_side(&g, &start, &iv.lower, -1, below, wp)? {
        Bracket::Point(t) => return point(t),
        Bracket::At(t) => t,
    };
    let mut hi = match find_side(&g, &start, &iv.upper, 1, above, wp)? {
        Bracket::Point(t) => return point(t),
        Bracket::At(t) => t,
    };
    let eps = Rational::new(1.into(), num_bigint::BigInt::one() << precision);
    let scale = lo.abs().max(hi.abs()).max(Rational::one());
    while &hi - &lo > &eps * &scale {
        let m = split(&lo, &hi);
        match sign_at(&g, &m, wp) {
            Some(0) => return point(m),
            Some(s) if s == below => lo = m,
            Some(s) if s == above => hi = m,
            _ => break,
        }
    }
    Ok(DyadicInterval::from_rationals(&lo, &hi, precision))
}
