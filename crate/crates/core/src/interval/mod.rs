//! Outward-rounded interval arithmetic over dyadic rationals.
//!
//! Every operation returns an interval guaranteed to contain the exact
//! result for all points of its inputs. Endpoints are `mantissa · 2^exp`
//! rounded to the interval's working precision; a missing endpoint stands
//! for −∞ (lower) or +∞ (upper).

mod dyadic;
mod elementary;
mod eval;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use dyadic::{Dyadic, Round};
pub use elementary::{e_constant, pi};
pub use eval::{certified_sign, eval_interval, Sign};

use crate::expr::{Endpoint, RealInterval, Rational};

pub const DEFAULT_PRECISION: u32 = 64;
pub const DEFAULT_MAX_PRECISION: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("input interval does not meet the natural domain")]
    EmptyIntersection,
}

/// Closed interval `[lower, upper]` with dyadic endpoints; `None` marks an
/// infinite end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: Option<Dyadic>,
    hi: Option<Dyadic>,
    precision: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Ext {
    NegInf,
    Fin(Dyadic),
    PosInf,
}

impl Ext {
    fn sign(&self) -> i32 {
        match self {
            Ext::NegInf => -1,
            Ext::Fin(d) => d.signum(),
            Ext::PosInf => 1,
        }
    }

    fn mul(&self, other: &Ext) -> Ext {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a.mul(b)),
            (Ext::Fin(a), _) | (_, Ext::Fin(a)) if a.is_zero() => Ext::Fin(Dyadic::zero()),
            _ => {
                if self.sign() * other.sign() > 0 {
                    Ext::PosInf
                } else {
                    Ext::NegInf
                }
            }
        }
    }

    fn rank(&self) -> i32 {
        match self {
            Ext::NegInf => 0,
            Ext::Fin(_) => 1,
            Ext::PosInf => 2,
        }
    }

    fn cmp(&self, other: &Ext) -> Ordering {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

fn down(d: Dyadic, prec: u32) -> Dyadic {
    d.round(prec, Round::Down)
}

fn up(d: Dyadic, prec: u32) -> Dyadic {
    d.round(prec, Round::Up)
}

fn odd_root(d: &Dyadic, n: u32, prec: u32, dir: Round) -> Dyadic {
    if d.is_negative() {
        let flipped = match dir {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        };
        d.abs().nth_root(n, prec, flipped).neg()
    } else {
        d.nth_root(n, prec, dir)
    }
}

impl DyadicInterval {
    /// Panics if `lo > hi`.
    pub fn new(lo: Option<Dyadic>, hi: Option<Dyadic>, precision: u32) -> Self {
        if let (Some(a), Some(b)) = (&lo, &hi) {
            assert!(a <= b, "interval with lower > upper");
        }
        DyadicInterval { lo, hi, precision }
    }

    pub fn point(d: Dyadic, precision: u32) -> Self {
        DyadicInterval { lo: Some(d.clone()), hi: Some(d), precision }
    }

    pub fn point_int(n: i64) -> Self {
        DyadicInterval::point(Dyadic::from_int(n), DEFAULT_PRECISION)
    }

    pub fn entire(precision: u32) -> Self {
        DyadicInterval { lo: None, hi: None, precision }
    }

    /// Smallest dyadic interval at `precision` bits containing `r`.
    pub fn from_rational(r: &Rational, precision: u32) -> Self {
        DyadicInterval {
            lo: Some(Dyadic::from_rational(r, precision, Round::Down)),
            hi: Some(Dyadic::from_rational(r, precision, Round::Up)),
            precision,
        }
    }

    pub fn from_rationals(a: &Rational, b: &Rational, precision: u32) -> Self {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        DyadicInterval {
            lo: Some(Dyadic::from_rational(a, precision, Round::Down)),
            hi: Some(Dyadic::from_rational(b, precision, Round::Up)),
            precision,
        }
    }

    /// Closure of a real interval (open ends become closed).
    pub fn enclose_real_interval(iv: &RealInterval, precision: u32) -> Self {
        let lo = match &iv.lower {
            Endpoint::Infinite => None,
            Endpoint::Open(a) | Endpoint::Closed(a) => {
                Some(Dyadic::from_rational(a, precision, Round::Down))
            }
        };
        let hi = match &iv.upper {
            Endpoint::Infinite => None,
            Endpoint::Open(b) | Endpoint::Closed(b) => {
                Some(Dyadic::from_rational(b, precision, Round::Up))
            }
        };
        DyadicInterval { lo, hi, precision }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        DyadicInterval { precision, ..self.clone() }
    }

    pub fn lower(&self) -> Option<&Dyadic> {
        self.lo.as_ref()
    }

    pub fn upper(&self) -> Option<&Dyadic> {
        self.hi.as_ref()
    }

    pub fn lower_rational(&self) -> Option<Rational> {
        self.lo.as_ref().map(Dyadic::to_rational)
    }

    pub fn upper_rational(&self) -> Option<Rational> {
        self.hi.as_ref().map(Dyadic::to_rational)
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }

    pub fn is_point(&self) -> bool {
        matches!((&self.lo, &self.hi), (Some(a), Some(b)) if a == b)
    }

    pub fn width(&self) -> Option<Dyadic> {
        match (&self.lo, &self.hi) {
            (Some(a), Some(b)) => Some(b.sub(a)),
            _ => None,
        }
    }

    /// Width as `f64`, `+∞` when unbounded.
    pub fn width_f64(&self) -> f64 {
        self.width().map_or(f64::INFINITY, |w| w.to_f64())
    }

    pub fn midpoint(&self) -> Option<Dyadic> {
        match (&self.lo, &self.hi) {
            (Some(a), Some(b)) => Some(a.add(b).shift(-1)),
            _ => None,
        }
    }

    pub fn midpoint_rational(&self) -> Option<Rational> {
        self.midpoint().map(|m| m.to_rational())
    }

    pub fn contains_dyadic(&self, d: &Dyadic) -> bool {
        self.lo.as_ref().map_or(true, |a| a <= d) && self.hi.as_ref().map_or(true, |b| d <= b)
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        self.lo.as_ref().map_or(true, |a| &a.to_rational() <= r)
            && self.hi.as_ref().map_or(true, |b| r <= &b.to_rational())
    }

    pub fn contains_zero(&self) -> bool {
        self.contains_dyadic(&Dyadic::zero())
    }

    /// Every point strictly positive.
    pub fn is_positive(&self) -> bool {
        self.lo.as_ref().is_some_and(Dyadic::is_positive)
    }

    pub fn is_negative(&self) -> bool {
        self.hi.as_ref().is_some_and(Dyadic::is_negative)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.lo.as_ref().is_some_and(|a| !a.is_negative())
    }

    pub fn is_nonpositive(&self) -> bool {
        self.hi.as_ref().is_some_and(|b| !b.is_positive())
    }

    /// `Some(true)` if every point of `self` is below every point of `other`.
    pub fn strictly_below(&self, other: &DyadicInterval) -> bool {
        matches!((&self.hi, &other.lo), (Some(a), Some(b)) if a < b)
    }

    pub fn is_disjoint_from(&self, other: &DyadicInterval) -> bool {
        self.strictly_below(other) || other.strictly_below(self)
    }

    pub fn is_subset_of(&self, other: &DyadicInterval) -> bool {
        let lo_ok = match (&other.lo, &self.lo) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(o), Some(s)) => o <= s,
        };
        let hi_ok = match (&other.hi, &self.hi) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(o), Some(s)) => s <= o,
        };
        lo_ok && hi_ok
    }

    pub fn intersect(&self, other: &DyadicInterval) -> Option<DyadicInterval> {
        let lo = match (&self.lo, &other.lo) {
            (Some(a), Some(b)) => Some(a.max(b).clone()),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        let hi = match (&self.hi, &other.hi) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        if let (Some(a), Some(b)) = (&lo, &hi) {
            if a > b {
                return None;
            }
        }
        Some(DyadicInterval { lo, hi, precision: self.precision.max(other.precision) })
    }

    pub fn hull(&self, other: &DyadicInterval) -> DyadicInterval {
        let lo = match (&self.lo, &other.lo) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            _ => None,
        };
        let hi = match (&self.hi, &other.hi) {
            (Some(a), Some(b)) => Some(a.max(b).clone()),
            _ => None,
        };
        DyadicInterval { lo, hi, precision: self.precision.max(other.precision) }
    }

    /// Splits a bounded interval at its midpoint.
    pub fn bisect(&self) -> Option<(DyadicInterval, DyadicInterval)> {
        let m = self.midpoint()?;
        Some((
            DyadicInterval { lo: self.lo.clone(), hi: Some(m.clone()), precision: self.precision },
            DyadicInterval { lo: Some(m), hi: self.hi.clone(), precision: self.precision },
        ))
    }

    fn prec_with(&self, other: &DyadicInterval) -> u32 {
        self.precision.max(other.precision)
    }

    pub fn neg(&self) -> DyadicInterval {
        DyadicInterval {
            lo: self.hi.as_ref().map(Dyadic::neg),
            hi: self.lo.as_ref().map(Dyadic::neg),
            precision: self.precision,
        }
    }

    pub fn add(&self, other: &DyadicInterval) -> DyadicInterval {
        let p = self.prec_with(other);
        let lo = match (&self.lo, &other.lo) {
            (Some(a), Some(b)) => Some(down(a.add(b), p)),
            _ => None,
        };
        let hi = match (&self.hi, &other.hi) {
            (Some(a), Some(b)) => Some(up(a.add(b), p)),
            _ => None,
        };
        DyadicInterval { lo, hi, precision: p }
    }

    pub fn sub(&self, other: &DyadicInterval) -> DyadicInterval {
        self.add(&other.neg())
    }

    fn ext_lo(&self) -> Ext {
        self.lo.clone().map_or(Ext::NegInf, Ext::Fin)
    }

    fn ext_hi(&self) -> Ext {
        self.hi.clone().map_or(Ext::PosInf, Ext::Fin)
    }

    pub fn mul(&self, other: &DyadicInterval) -> DyadicInterval {
        let p = self.prec_with(other);
        let (a, b) = (self.ext_lo(), self.ext_hi());
        let (c, d) = (other.ext_lo(), other.ext_hi());
        let products = [a.mul(&c), a.mul(&d), b.mul(&c), b.mul(&d)];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for q in &products[1..] {
            if q.cmp(&lo) == Ordering::Less {
                lo = q.clone();
            }
            if q.cmp(&hi) == Ordering::Greater {
                hi = q.clone();
            }
        }
        let lo = match lo {
            Ext::Fin(v) => Some(down(v, p)),
            _ => None,
        };
        let hi = match hi {
            Ext::Fin(v) => Some(up(v, p)),
            _ => None,
        };
        DyadicInterval { lo, hi, precision: p }
    }

    /// Multiplication by `2^k`, exact.
    pub fn shift(&self, k: i64) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.as_ref().map(|a| a.shift(k)),
            hi: self.hi.as_ref().map(|b| b.shift(k)),
            precision: self.precision,
        }
    }

    /// `{1/t : t ∈ self, t ≠ 0}`, enclosed.
    pub fn recip(&self) -> Result<DyadicInterval, IntervalError> {
        let p = self.precision;
        let one = Dyadic::one();
        let inv = |d: &Dyadic, dir| one.div(d, p, dir);
        let lo_zero = self.lo.as_ref().is_some_and(Dyadic::is_zero);
        let hi_zero = self.hi.as_ref().is_some_and(Dyadic::is_zero);
        if lo_zero && hi_zero {
            return Err(IntervalError::EmptyIntersection);
        }
        if lo_zero {
            let lo = self.hi.as_ref().map_or(Dyadic::zero(), |b| inv(b, Round::Down));
            return Ok(DyadicInterval { lo: Some(lo), hi: None, precision: p });
        }
        if hi_zero {
            let hi = self.lo.as_ref().map_or(Dyadic::zero(), |a| inv(a, Round::Up));
            return Ok(DyadicInterval { lo: None, hi: Some(hi), precision: p });
        }
        if self.contains_zero() {
            return Ok(DyadicInterval::entire(p));
        }
        let lo = self.hi.as_ref().map_or(Dyadic::zero(), |b| inv(b, Round::Down));
        let hi = self.lo.as_ref().map_or(Dyadic::zero(), |a| inv(a, Round::Up));
        Ok(DyadicInterval { lo: Some(lo), hi: Some(hi), precision: p })
    }

    pub fn div(&self, other: &DyadicInterval) -> Result<DyadicInterval, IntervalError> {
        let p = self.prec_with(other);
        Ok(self.mul(&other.with_precision(p).recip()?))
    }

    /// Integer power; negative exponents go through `recip`.
    pub fn powi(&self, n: i64) -> Result<DyadicInterval, IntervalError> {
        let p = self.precision;
        if n == 0 {
            return Ok(DyadicInterval::point(Dyadic::one(), p));
        }
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let k = u32::try_from(n).expect("exponent fits in u32");
        let pw = |d: &Dyadic, dir| d.powi(k, p, dir);
        if k % 2 == 1 {
            return Ok(DyadicInterval {
                lo: self.lo.as_ref().map(|a| pw(a, Round::Down)),
                hi: self.hi.as_ref().map(|b| pw(b, Round::Up)),
                precision: p,
            });
        }
        if self.is_nonnegative() {
            Ok(DyadicInterval {
                lo: self.lo.as_ref().map(|a| pw(a, Round::Down)),
                hi: self.hi.as_ref().map(|b| pw(b, Round::Up)),
                precision: p,
            })
        } else if self.is_nonpositive() {
            Ok(DyadicInterval {
                lo: self.hi.as_ref().map(|b| pw(b, Round::Down)),
                hi: self.lo.as_ref().map(|a| pw(a, Round::Up)),
                precision: p,
            })
        } else {
            let hi = match (&self.lo, &self.hi) {
                (Some(a), Some(b)) => Some(pw(&a.abs().max(b.abs()), Round::Up)),
                _ => None,
            };
            Ok(DyadicInterval { lo: Some(Dyadic::zero()), hi, precision: p })
        }
    }

    /// Real `n`-th root; even roots only see the nonnegative part.
    pub fn root(&self, n: u32) -> Result<DyadicInterval, IntervalError> {
        let p = self.precision;
        if n % 2 == 0 {
            if self.hi.as_ref().is_some_and(Dyadic::is_negative) {
                return Err(IntervalError::EmptyIntersection);
            }
            let lo = match &self.lo {
                Some(a) if a.is_positive() => a.nth_root(n, p, Round::Down),
                _ => Dyadic::zero(),
            };
            let hi = self.hi.as_ref().map(|b| b.nth_root(n, p, Round::Up));
            return Ok(DyadicInterval { lo: Some(lo), hi, precision: p });
        }
        Ok(DyadicInterval {
            lo: self.lo.as_ref().map(|a| odd_root(a, n, p, Round::Down)),
            hi: self.hi.as_ref().map(|b| odd_root(b, n, p, Round::Up)),
            precision: p,
        })
    }

    pub fn exp(&self) -> DyadicInterval {
        elementary::exp_interval(self)
    }

    pub fn ln(&self) -> Result<DyadicInterval, IntervalError> {
        elementary::ln_interval(self)
    }

    pub fn sin(&self) -> DyadicInterval {
        elementary::sin_interval(self)
    }

    pub fn cos(&self) -> DyadicInterval {
        elementary::cos_interval(self)
    }

    /// Decimal rendering of the midpoint with `digits` significant digits.
    pub fn midpoint_decimal(&self, digits: usize) -> String {
        match self.midpoint() {
            Some(m) => decimal_string(&m.to_rational(), digits),
            None => "unbounded".to_string(),
        }
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lo.as_ref().map_or("-inf".to_string(), |a| a.to_decimal(20));
        let hi = self.hi.as_ref().map_or("inf".to_string(), |b| b.to_decimal(20));
        write!(f, "[{lo}, {hi}]")
    }
}

/// `r` with `digits` significant decimal digits, rounded to nearest.
/// Uses scientific notation outside `1e-7 ..= 1e21`.
pub fn decimal_string(r: &Rational, digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let neg = r.is_negative();
    let a = r.abs();
    let ten = BigInt::from(10);
    // k with 10^k <= a < 10^(k+1)
    let approx = (a.numer().bits() as i64 - a.denom().bits() as i64) * 30103 / 100000;
    let mut k = approx;
    let pow10 = |e: i64| -> Rational {
        if e >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    while pow10(k) > a {
        k -= 1;
    }
    while pow10(k + 1) <= a {
        k += 1;
    }
    let scaled = &a * pow10(digits as i64 - 1 - k);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut n = if Rational::new(rem * 2, scaled.denom().clone()) >= Rational::one() {
        q + 1
    } else {
        q
    };
    if n.to_string().len() > digits {
        n /= 10;
        k += 1;
    }
    let s = n.to_string();
    let body = if (-7..21).contains(&k) {
        if k >= 0 {
            let int_len = (k + 1) as usize;
            if s.len() <= int_len {
                format!("{s}{}", "0".repeat(int_len - s.len()))
            } else {
                trim_fraction(format!("{}.{}", &s[..int_len], &s[int_len..]))
            }
        } else {
            trim_fraction(format!("0.{}{s}", "0".repeat((-k - 1) as usize)))
        }
    } else {
        let mantissa = if s.len() > 1 {
            trim_fraction(format!("{}.{}", &s[..1], &s[1..]))
        } else {
            s.clone()
        };
        format!("{mantissa}e{k}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_fraction(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests;
