use std::cmp::Ordering;

use crate::expr::{Branch, Rational};
use crate::interval::{Dyadic, DyadicInterval, IntervalError, Round};

use super::SpecialError;

/// Enclosure of −1/e at `prec` bits.
pub fn neg_inv_e(prec: u32) -> DyadicInterval {
    DyadicInterval::point(Dyadic::from_int(-1), prec).exp().neg()
}

/// Exact comparison of `a` with the irrational −1/e.
pub fn cmp_branch_point(a: &Rational) -> Ordering {
    let mut p = 64;
    loop {
        let bp = neg_inv_e(p);
        if bp.upper_rational().is_some_and(|u| *a > u) {
            return Ordering::Greater;
        }
        if bp.lower_rational().is_some_and(|l| *a < l) {
            return Ordering::Less;
        }
        p *= 2;
    }
}

/// Certified sign of `w·e^w − t`, `None` if undecided at this precision.
fn g_sign(w: &Dyadic, t: &Dyadic, prec: u32) -> Option<i32> {
    let wi = DyadicInterval::point(w.clone(), prec);
    let v = wi.mul(&wi.exp()).sub(&DyadicInterval::point(t.clone(), prec));
    if v.is_positive() {
        Some(1)
    } else if v.is_negative() {
        Some(-1)
    } else if v.is_point() {
        Some(0)
    } else {
        None
    }
}

/// Double-precision estimate of `W_branch(t)`.
fn estimate(branch: Branch, t: f64) -> f64 {
    let e = std::f64::consts::E;
    let p = (2.0 * (e * t + 1.0)).max(0.0).sqrt();
    let mut w = match branch {
        Branch::Principal if t < -0.25 => -1.0 + p - p * p / 3.0,
        Branch::Principal if t < 3.0 => (1.0 + t).ln() * 0.8,
        Branch::Principal => {
            let l = t.ln();
            l - l.ln().max(0.0)
        }
        Branch::Lower if t > -0.25 => {
            let l = (-t).ln();
            l - (-l).ln()
        }
        Branch::Lower => -1.0 - p - p * p / 3.0,
    };
    for _ in 0..50 {
        let ew = w.exp();
        let f = w * ew - t;
        let d = ew * (w + 1.0);
        if d == 0.0 || !f.is_finite() {
            break;
        }
        let next = w - f / (d - (w + 2.0) * f / (2.0 * w + 2.0));
        if !next.is_finite() || (next - w).abs() <= 1e-16 * w.abs().max(1.0) {
            w = if next.is_finite() { next } else { w };
            break;
        }
        w = next;
    }
    w
}

/// One Halley step at working precision `wp`.
fn halley(w: &Dyadic, t: &Dyadic, wp: u32) -> Option<Dyadic> {
    let ew = DyadicInterval::point(w.clone(), wp).exp().midpoint()?;
    let f = w.mul(&ew).sub(t);
    let w1 = w.add(&Dyadic::one());
    let d = ew.mul(&w1);
    let corr_num = w.add(&Dyadic::from_int(2)).mul(&f);
    let corr_den = w1.shift(1);
    if corr_den.is_zero() {
        return None;
    }
    let corr = corr_num.div(&corr_den, wp, Round::Down);
    let den = d.sub(&corr);
    if den.is_zero() {
        return None;
    }
    Some(w.sub(&f.div(&den, wp, Round::Down)).round(wp, Round::Down))
}

/// Signs of `g` just left and right of the root on each branch.
fn expected_signs(branch: Branch) -> (i32, i32) {
    match branch {
        Branch::Principal => (-1, 1),
        Branch::Lower => (1, -1),
    }
}

fn bisection(branch: Branch, t: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    let (left_sign, right_sign) = expected_signs(branch);
    let wp = prec + 32;
    let (mut a, mut b) = match branch {
        Branch::Principal => {
            let mut b = Dyadic::one();
            while g_sign(&b, t, wp) != Some(1) {
                b = b.shift(1);
            }
            (Dyadic::from_int(-1), b)
        }
        Branch::Lower => {
            let mut a = Dyadic::from_int(-2);
            while g_sign(&a, t, wp) != Some(1) {
                a = a.shift(1);
            }
            (a, Dyadic::from_int(-1))
        }
    };
    let target = Dyadic::pow2(-(prec as i64));
    while b.sub(&a) > target {
        let m = a.add(&b).shift(-1);
        match g_sign(&m, t, wp) {
            Some(0) => return (m.clone(), m),
            Some(s) if s == left_sign => a = m,
            Some(s) if s == right_sign => b = m,
            _ => break,
        }
    }
    (a, b)
}

/// Certified bracket `[lo, hi]` of `W_branch(t)` for a dyadic `t` strictly
/// inside the branch domain.
pub(crate) fn w_point(branch: Branch, t: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    if t.is_zero() && branch == Branch::Principal {
        return (Dyadic::zero(), Dyadic::zero());
    }
    let w0 = estimate(branch, t.to_f64());
    if !w0.is_finite() || (w0 + 1.0).abs() < 1.0 / 16.0 {
        return bisection(branch, t, prec);
    }
    let Some(mut w) = Dyadic::from_f64(w0) else {
        return bisection(branch, t, prec);
    };
    let scale = w.magnitude_bits().max(0);
    let target = prec as i64 + scale + 8;
    let mut p: i64 = 40;
    let mut extra = 2;
    loop {
        p = (p * 3).min(target + 16);
        match halley(&w, t, p as u32 + 8) {
            Some(next) => w = next,
            None => return bisection(branch, t, prec),
        }
        if p >= target + 16 {
            extra -= 1;
            if extra == 0 {
                break;
            }
        }
    }
    let (left_sign, right_sign) = expected_signs(branch);
    let wp = (target + 24) as u32;
    let mut delta = Dyadic::pow2(scale - prec as i64 - 2);
    for _ in 0..8 {
        let a = w.sub(&delta);
        let b = w.add(&delta);
        if g_sign(&a, t, wp) == Some(left_sign) && g_sign(&b, t, wp) == Some(right_sign) {
            return (a, b);
        }
        delta = delta.shift(4);
    }
    bisection(branch, t, prec)
}

/// Enclosure of `W_branch` over the part of `z` inside the branch domain.
pub(crate) fn w_interval(branch: Branch, z: &DyadicInterval) -> Result<DyadicInterval, IntervalError> {
    let p = z.precision();
    let bp = neg_inv_e(p + 16);
    let (bl, bh) = (bp.lower().unwrap().clone(), bp.upper().unwrap().clone());
    if z.upper().is_some_and(|u| *u < bl) {
        return Err(IntervalError::EmptyIntersection);
    }
    let at_branch_point = |d: Option<&Dyadic>| d.map_or(true, |v| *v <= bh);
    let minus_one = Dyadic::from_int(-1);
    let round = |d: Dyadic, dir| d.round(p, dir);
    match branch {
        Branch::Principal => {
            let lo = if at_branch_point(z.lower()) {
                minus_one
            } else {
                w_point(branch, z.lower().unwrap(), p).0
            };
            let hi = match z.upper() {
                None => None,
                Some(u) if *u <= bh => Some(w_point(branch, &bh, p).1),
                Some(u) => Some(w_point(branch, u, p).1),
            };
            Ok(DyadicInterval::new(Some(round(lo, Round::Down)), hi.map(|h| round(h, Round::Up)), p))
        }
        Branch::Lower => {
            if z.lower().is_some_and(|l| !l.is_negative()) {
                return Err(IntervalError::EmptyIntersection);
            }
            let hi = if at_branch_point(z.lower()) {
                minus_one
            } else {
                w_point(branch, z.lower().unwrap(), p).1
            };
            let lo = match z.upper() {
                None => None,
                Some(u) if !u.is_negative() => None,
                Some(u) if *u <= bh => Some(w_point(branch, &bh, p).0),
                Some(u) => Some(w_point(branch, u, p).0),
            };
            Ok(DyadicInterval::new(lo.map(|l| round(l, Round::Down)), Some(round(hi, Round::Up)), p))
        }
    }
}

/// Enclosure of `W_branch(z)`; errors when `z` certainly misses the branch
/// domain. Parts of `z` outside the domain are ignored.
pub fn lambert_w(branch: Branch, z: &DyadicInterval, precision: u32) -> Result<DyadicInterval, SpecialError> {
    w_interval(branch, &z.with_precision(precision)).map_err(|_| SpecialError::OutOfBranchDomain)
}
