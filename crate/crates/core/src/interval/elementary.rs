use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::ToPrimitive;

use super::{Dyadic, DyadicInterval, IntervalError, Round};

/// Beyond `2^HUGE_BITS` the exponential is only bounded crudely.
const HUGE_BITS: i64 = 40;

fn one(prec: u32) -> DyadicInterval {
    DyadicInterval::point(Dyadic::one(), prec)
}

fn int_point(n: i64, prec: u32) -> DyadicInterval {
    DyadicInterval::point(Dyadic::from_int(n), prec)
}

/// `[-m, m]` for the upper bound `m` of `|v|`.
fn symmetric_bound(v: &DyadicInterval) -> DyadicInterval {
    let m = match (v.lower(), v.upper()) {
        (Some(a), Some(b)) => a.abs().max(b.abs()),
        _ => return DyadicInterval::entire(v.precision()),
    };
    DyadicInterval::new(Some(m.neg()), Some(m), v.precision())
}

/// Halvings so that reduced arguments are below `2^-r` in magnitude.
fn reduction_bits(prec: u32) -> i64 {
    ((prec as u64).sqrt() as i64 / 2).max(2)
}

fn exp_point(x: &Dyadic, prec: u32) -> DyadicInterval {
    if x.is_zero() {
        return one(prec);
    }
    let m = x.magnitude_bits();
    if m > HUGE_BITS {
        let edge = Dyadic::pow2(1i64 << HUGE_BITS);
        return if x.is_positive() {
            DyadicInterval::new(Some(edge), None, prec)
        } else {
            DyadicInterval::new(Some(Dyadic::zero()), Some(Dyadic::pow2(-(1i64 << HUGE_BITS))), prec)
        };
    }
    let r = reduction_bits(prec);
    let s = (m + r).max(0);
    let w = prec + s as u32 + 16;
    let t = DyadicInterval::point(x.shift(-s), w);
    let tiny = Dyadic::pow2(-(w as i64) - 2);
    let mut sum = one(w);
    let mut term = one(w);
    let mut k = 1i64;
    loop {
        term = term.mul(&t).div(&int_point(k, w)).expect("nonzero divisor");
        let small = term.upper().is_some_and(|b| b.abs() < tiny)
            && term.lower().is_some_and(|a| a.abs() < tiny);
        if small {
            // tail from this term on is at most 8/7 of it since |t| <= 1/4
            sum = sum.add(&symmetric_bound(&term).shift(1));
            break;
        }
        sum = sum.add(&term);
        k += 1;
    }
    for _ in 0..s {
        sum = sum.mul(&sum);
    }
    round_out(&sum, prec)
}

fn round_out(v: &DyadicInterval, prec: u32) -> DyadicInterval {
    DyadicInterval::new(
        v.lower().map(|a| a.round(prec, Round::Down)),
        v.upper().map(|b| b.round(prec, Round::Up)),
        prec,
    )
}

pub(crate) fn exp_interval(x: &DyadicInterval) -> DyadicInterval {
    let p = x.precision();
    let lo = match x.lower() {
        None => Some(Dyadic::zero()),
        Some(a) => exp_point(a, p).lower().cloned(),
    };
    let hi = x.upper().and_then(|b| exp_point(b, p).upper().cloned());
    let lo = lo.map(|a| if a.is_negative() { Dyadic::zero() } else { a });
    DyadicInterval::new(lo, hi, p)
}

fn ln2_bounds() -> (Dyadic, Dyadic) {
    // 0.693147180... lies strictly between these
    (Dyadic::new(BigInt::from(1419), -11), Dyadic::new(BigInt::from(710), -10))
}

/// Crude enclosure from the binary exponent alone.
fn ln_crude(x: &Dyadic, prec: u32) -> DyadicInterval {
    let m = x.magnitude_bits();
    let (l2lo, l2hi) = ln2_bounds();
    let scaled = |k: i64, lower: bool| {
        let kd = Dyadic::from_int(k);
        match (k >= 0, lower) {
            (true, true) | (false, false) => kd.mul(&l2lo),
            _ => kd.mul(&l2hi),
        }
    };
    DyadicInterval::new(Some(scaled(m - 1, true)), Some(scaled(m, false)), prec)
}

fn ln_approx_f64(x: &Dyadic) -> f64 {
    let mant = x.mantissa();
    let b = mant.bits() as i64;
    let (top, e) = if b > 60 {
        ((mant >> (b - 60) as usize).to_f64().unwrap_or(1.0), x.exponent() + b - 60)
    } else {
        (mant.to_f64().unwrap_or(1.0), x.exponent())
    };
    top.ln() + e as f64 * std::f64::consts::LN_2
}

/// `ln x` for `x > 0`, as the certified inverse of `exp`: Halley steps on
/// `e^y = x`, then a bracket `[y - δ, y + δ]` checked by evaluating `exp`.
fn ln_point(x: &Dyadic, prec: u32) -> DyadicInterval {
    if *x == Dyadic::one() {
        return DyadicInterval::point(Dyadic::zero(), prec);
    }
    let mut y = Dyadic::from_f64(ln_approx_f64(x)).unwrap_or_else(Dyadic::zero);
    let scale = y.magnitude_bits().max(0);
    let target = prec as i64 + scale + 8;
    let xd = x.clone();
    let mut p: i64 = 48;
    let mut extra_rounds = 2;
    loop {
        p = (p * 3).min(target + 16);
        let wp = p as u32 + 8;
        let ey = exp_point(&y, wp);
        let ey = ey.midpoint().unwrap_or_else(|| xd.clone());
        let num = xd.sub(&ey).shift(1);
        let den = xd.add(&ey);
        if den.is_zero() {
            break;
        }
        let step = num.div(&den, wp, Round::Down);
        y = y.add(&step).round(wp + scale as u32, Round::Down);
        if p >= target + 16 {
            extra_rounds -= 1;
            if extra_rounds == 0 {
                break;
            }
        }
    }
    let w = (target + 16) as u32;
    let mut delta = Dyadic::pow2(scale - prec as i64 - 2);
    for _ in 0..16 {
        let a = y.sub(&delta);
        let b = y.add(&delta);
        let below = exp_point(&a, w).upper().is_some_and(|u| u < x);
        let above = exp_point(&b, w).lower().is_some_and(|l| l > x);
        if below && above {
            return DyadicInterval::new(
                Some(a.round(prec, Round::Down)),
                Some(b.round(prec, Round::Up)),
                prec,
            );
        }
        delta = delta.shift(4);
    }
    ln_crude(x, prec)
}

pub(crate) fn ln_interval(x: &DyadicInterval) -> Result<DyadicInterval, IntervalError> {
    let p = x.precision();
    if x.is_nonpositive() {
        return Err(IntervalError::EmptyIntersection);
    }
    let lo = match x.lower() {
        Some(a) if a.is_positive() => ln_point(a, p).lower().cloned(),
        _ => None,
    };
    let hi = x.upper().and_then(|b| ln_point(b, p).upper().cloned());
    Ok(DyadicInterval::new(lo, hi, p))
}

/// Enclosures of `(sin x, cos x)`.
fn sincos_point(x: &Dyadic, prec: u32) -> (DyadicInterval, DyadicInterval) {
    if x.is_zero() {
        return (DyadicInterval::point(Dyadic::zero(), prec), one(prec));
    }
    let m = x.magnitude_bits();
    let r = reduction_bits(prec);
    let s = (m + r).max(0);
    let w = prec + 2 * s as u32 + 16;
    let t = DyadicInterval::point(x.shift(-s), w);
    let t2 = t.mul(&t);
    let tiny = Dyadic::pow2(-(w as i64) - 2);
    let is_tiny = |v: &DyadicInterval| {
        v.upper().is_some_and(|b| b.abs() < tiny) && v.lower().is_some_and(|a| a.abs() < tiny)
    };
    // alternating series with decreasing terms: the tail is bounded by the
    // first omitted term
    let series = |first: DyadicInterval, start: i64| {
        let mut sum = first.clone();
        let mut term = first;
        let mut k = start;
        loop {
            let denom = int_point((k + 1) * (k + 2), w);
            term = term.mul(&t2).div(&denom).expect("nonzero divisor").neg();
            if is_tiny(&term) {
                return sum.add(&symmetric_bound(&term));
            }
            sum = sum.add(&term);
            k += 2;
        }
    };
    let mut sn = series(t.clone(), 1);
    let mut cs = series(one(w), 0);
    let unit = DyadicInterval::new(Some(Dyadic::from_int(-1)), Some(Dyadic::one()), w);
    for _ in 0..s {
        let new_s = sn.mul(&cs).shift(1);
        let new_c = one(w).sub(&sn.mul(&sn).shift(1));
        sn = new_s.intersect(&unit).unwrap_or_else(|| unit.clone());
        cs = new_c.intersect(&unit).unwrap_or_else(|| unit.clone());
    }
    (round_out(&sn, prec), round_out(&cs, prec))
}

fn unit_interval(prec: u32) -> DyadicInterval {
    DyadicInterval::new(Some(Dyadic::from_int(-1)), Some(Dyadic::one()), prec)
}

/// Mean-value form: `f(mid) ± radius`, since |sin'|, |cos'| <= 1.
fn trig_interval(x: &DyadicInterval, pick_sin: bool) -> DyadicInterval {
    let p = x.precision();
    let (mid, rad) = match (x.midpoint(), x.width()) {
        (Some(m), Some(w)) => (m, w.shift(-1)),
        _ => return unit_interval(p),
    };
    if rad > Dyadic::from_int(2) {
        return unit_interval(p);
    }
    let (s, c) = sincos_point(&mid, p);
    let centre = if pick_sin { s } else { c };
    let spread = DyadicInterval::new(Some(rad.neg()), Some(rad), p);
    centre.add(&spread).intersect(&unit_interval(p)).unwrap_or_else(|| unit_interval(p))
}

pub(crate) fn sin_interval(x: &DyadicInterval) -> DyadicInterval {
    trig_interval(x, true)
}

pub(crate) fn cos_interval(x: &DyadicInterval) -> DyadicInterval {
    trig_interval(x, false)
}

/// `atan(1/k)` by its alternating series.
fn atan_inv(k: i64, w: u32) -> DyadicInterval {
    let kk = BigInt::from(k);
    let k2 = &kk * &kk;
    let mut power = kk.clone();
    let mut sum = DyadicInterval::point(Dyadic::zero(), w);
    let tiny = Dyadic::pow2(-(w as i64) - 4);
    let mut j: i64 = 0;
    loop {
        let den = Dyadic::from_bigint(&power * BigInt::from(2 * j + 1));
        let lo = Dyadic::one().div(&den, w, Round::Down);
        let hi = Dyadic::one().div(&den, w, Round::Up);
        if hi < tiny {
            let bound = DyadicInterval::new(Some(hi.neg()), Some(hi), w);
            return sum.add(&bound);
        }
        let term = DyadicInterval::new(Some(lo), Some(hi), w);
        sum = if j % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        power *= &k2;
        j += 1;
    }
}

/// π at `prec` bits, from `π = 16 atan(1/5) − 4 atan(1/239)`.
pub fn pi(prec: u32) -> DyadicInterval {
    let w = prec + 16;
    let a = atan_inv(5, w).shift(4);
    let b = atan_inv(239, w).shift(2);
    round_out(&a.sub(&b), prec)
}

/// Euler's number at `prec` bits.
pub fn e_constant(prec: u32) -> DyadicInterval {
    exp_point(&Dyadic::one(), prec)
}
