use num_traits::{Signed, Zero};

use super::{e_constant, pi, DyadicInterval, IntervalError};
use crate::expr::{ExactEval, Expr, Rational};

/// Outcome of a sign certification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Positive,
    /// An exact evaluation at a rational point of the input gave 0.
    ContainsZero,
    Unknown,
}

/// Enclosure of `{e(t) : t ∈ x ∩ dom(e)}` computed at `precision` bits.
pub fn eval_interval(
    e: &Expr,
    x: &DyadicInterval,
    precision: u32,
) -> Result<DyadicInterval, IntervalError> {
    let x = x.with_precision(precision);
    eval(e, &x, precision)
}

fn eval(e: &Expr, x: &DyadicInterval, p: u32) -> Result<DyadicInterval, IntervalError> {
    Ok(match e {
        Expr::Lit(r) => DyadicInterval::from_rational(r, p),
        Expr::Var => x.clone(),
        Expr::E => e_constant(p),
        Expr::Pi => pi(p),
        Expr::Neg(a) => eval(a, x, p)?.neg(),
        Expr::Add(a, b) => eval(a, x, p)?.add(&eval(b, x, p)?),
        Expr::Sub(a, b) => eval(a, x, p)?.sub(&eval(b, x, p)?),
        Expr::Mul(a, b) if a == b => eval(a, x, p)?.powi(2)?,
        Expr::Mul(a, b) => eval(a, x, p)?.mul(&eval(b, x, p)?),
        Expr::Div(a, b) => eval(a, x, p)?.div(&eval(b, x, p)?)?,
        Expr::Pow(a, n) => eval(a, x, p)?.powi(*n)?,
        Expr::Root(n, a) => eval(a, x, p)?.root(*n)?,
        Expr::Exp(a) => eval(a, x, p)?.exp(),
        Expr::Ln(a) => eval(a, x, p)?.ln()?,
        Expr::Sin(a) => eval(a, x, p)?.sin(),
        Expr::Cos(a) => eval(a, x, p)?.cos(),
        Expr::W(k, a) => crate::special::w_interval(*k, &eval(a, x, p)?)?,
    })
}

fn exact_sign(e: &Expr, t: &Rational) -> Option<i32> {
    match e.evaluate_exact(t) {
        Ok(ExactEval::Value(v)) => Some(if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }),
        _ => None,
    }
}

/// Sign of `e` on all of `x`, refining precision from 64 bits by doubling.
///
/// Rational sample points of `x` are evaluated exactly first: an exact zero
/// gives `ContainsZero`, opposite exact signs give `Unknown` at once, and a
/// point interval with an exact value is decided outright.
pub fn certified_sign(e: &Expr, x: &DyadicInterval, max_precision: u32) -> Sign {
    let mut samples = Vec::new();
    if let Some(a) = x.lower_rational() {
        samples.push(a);
    }
    if !x.is_point() {
        if let Some(b) = x.upper_rational() {
            samples.push(b);
        }
        if let Some(m) = x.midpoint_rational() {
            samples.push(m);
        }
    }
    let signs: Vec<i32> = samples.iter().filter_map(|t| exact_sign(e, t)).collect();
    if signs.contains(&0) {
        return Sign::ContainsZero;
    }
    if signs.contains(&1) && signs.contains(&-1) {
        return Sign::Unknown;
    }
    if x.is_point() {
        match signs.first() {
            Some(1) => return Sign::Positive,
            Some(-1) => return Sign::Negative,
            _ => {}
        }
    }
    let mut p = 64u32;
    loop {
        if let Ok(v) = eval_interval(e, x, p) {
            if v.is_positive() {
                return Sign::Positive;
            }
            if v.is_negative() {
                return Sign::Negative;
            }
        }
        if p >= max_precision {
            return Sign::Unknown;
        }
        p = (p * 2).min(max_precision.max(64));
    }
}
