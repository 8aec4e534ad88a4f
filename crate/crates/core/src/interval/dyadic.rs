use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::expr::Rational;

/// Rounding direction for inexact dyadic operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// `mantissa · 2^exponent`, normalised so the mantissa is odd (or the value
/// is zero with exponent 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn bits(n: &BigInt) -> i64 {
    n.bits() as i64
}

fn div_round(num: &BigInt, den: &BigInt, dir: Round) -> BigInt {
    match dir {
        Round::Down => num.div_floor(den),
        Round::Up => -((-num).div_floor(den)),
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Dyadic::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic { mant: mant >> tz, exp: exp + tz as i64 }
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Dyadic::new(n, 0)
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic { mant: BigInt::one(), exp: k }
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Dyadic::zero());
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let exponent = ((bits >> 52) & 0x7ff) as i64;
        let fraction = (bits & ((1u64 << 52) - 1)) as i64;
        let (m, e) = if exponent == 0 {
            (fraction, -1074)
        } else {
            (fraction | (1i64 << 52), exponent - 1075)
        };
        Some(Dyadic::new(BigInt::from(sign * m), e))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            BigSign::Minus => -1,
            BigSign::NoSign => 0,
            BigSign::Plus => 1,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Smallest `k` with `|self| < 2^k`; `i64::MIN` for zero.
    pub fn magnitude_bits(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            bits(&self.mant) + self.exp
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// `self · 2^k`.
    pub fn shift(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Rounds to at most `prec` significant bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let b = bits(&self.mant);
        let prec = prec.max(2) as i64;
        if b <= prec {
            return self.clone();
        }
        let drop = (b - prec) as usize;
        let den = BigInt::one() << drop;
        Dyadic::new(div_round(&self.mant, &den, dir), self.exp + drop as i64)
    }

    /// Largest (Down) or smallest (Up) multiple of `2^-frac_bits` on the
    /// given side of `r`, further rounded to `prec` bits.
    pub fn from_rational(r: &Rational, prec: u32, dir: Round) -> Dyadic {
        if r.is_zero() {
            return Dyadic::zero();
        }
        let (n, d) = (r.numer(), r.denom());
        if d.is_one() {
            return Dyadic::from_bigint(n.clone()).round(prec, dir);
        }
        if (d & (d - BigInt::one())).is_zero() {
            let k = d.trailing_zeros().unwrap_or(0) as i64;
            return Dyadic::new(n.clone(), -k).round(prec, dir);
        }
        let k = prec as i64 + 2 + bits(d) - bits(n);
        let k = k.max(0);
        let num = n << k as usize;
        Dyadic::new(div_round(&num, d, dir), -k).round(prec, dir)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as usize)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Nearest-ish `f64` (truncated mantissa), saturating to ±∞ / 0.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = bits(&self.mant);
        let (m, e) = if b > 60 {
            (&self.mant >> (b - 60) as usize, self.exp + b - 60)
        } else {
            (self.mant.clone(), self.exp)
        };
        let m = m.to_f64().unwrap_or(0.0);
        if e > 2000 {
            return if m > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if e < -2000 {
            return 0.0;
        }
        m * 2f64.powi(e as i32)
    }

    /// `self / other` rounded to `prec` bits.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let k = (prec as i64 + 2 + bits(&other.mant) - bits(&self.mant)).max(0);
        let num = &self.mant << k as usize;
        let (num, den) = if other.mant.is_negative() {
            (-num, -other.mant.clone())
        } else {
            (num, other.mant.clone())
        };
        Dyadic::new(div_round(&num, &den, dir), self.exp - other.exp - k).round(prec, dir)
    }

    /// Real `n`-th root of a nonnegative value, rounded to `prec` bits.
    pub fn nth_root(&self, n: u32, prec: u32, dir: Round) -> Dyadic {
        assert!(!self.is_negative(), "nth_root of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let n64 = n as i64;
        let mag = bits(&self.mant) + self.exp;
        // scale so the result carries about prec + 2 bits
        let mut k = prec as i64 + 2 - mag.div_euclid(n64);
        let need = (-self.exp).max(0);
        if self.exp + n64 * k < 0 {
            k = (need + n64 - 1) / n64;
        }
        let shift = self.exp + n64 * k;
        let big = &self.mant << shift as usize;
        let r = big.nth_root(n);
        let exact = r.pow(n) == big;
        let r = if !exact && dir == Round::Up { r + 1 } else { r };
        Dyadic::new(r, -k).round(prec, dir)
    }

    /// `self^n` for `n ≥ 0` with directed rounding of the magnitude.
    pub fn powi(&self, n: u32, prec: u32, dir: Round) -> Dyadic {
        if n == 0 {
            return Dyadic::one();
        }
        let negative = self.is_negative() && n % 2 == 1;
        // magnitude rounding direction
        let mag_dir = match (negative, dir) {
            (false, d) => d,
            (true, Round::Down) => Round::Up,
            (true, Round::Up) => Round::Down,
        };
        let mut base = self.abs();
        let mut acc = Dyadic::one();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).round(prec, mag_dir);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).round(prec, mag_dir);
            }
        }
        if negative {
            acc.neg()
        } else {
            acc
        }
    }

    /// Decimal string with `digits` significant digits (truncated).
    pub fn to_decimal(&self, digits: usize) -> String {
        crate::interval::decimal_string(&self.to_rational(), digits)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.signum(), other.signum());
        if a != b {
            return a.cmp(&b);
        }
        if a == 0 {
            return Ordering::Equal;
        }
        // same sign: compare magnitudes quickly by bit length
        let (ma, mb) = (self.magnitude_bits(), other.magnitude_bits());
        if ma != mb {
            let mag = ma.cmp(&mb);
            return if a > 0 { mag } else { mag.reverse() };
        }
        self.sub(other).signum().cmp(&0)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::ratio;

    #[test]
    fn rational_rounding_brackets_value() {
        let third = ratio(1, 3);
        let lo = Dyadic::from_rational(&third, 64, Round::Down).to_rational();
        let hi = Dyadic::from_rational(&third, 64, Round::Up).to_rational();
        assert!(lo < third && third < hi);
        assert!(hi - lo < ratio(1, 1 << 60));
    }

    #[test]
    fn dyadic_rationals_convert_exactly() {
        let r = ratio(-5, 8);
        let d = Dyadic::from_rational(&r, 8, Round::Down);
        assert_eq!(d.to_rational(), r);
        assert_eq!(Dyadic::from_f64(-0.625).unwrap(), d);
    }

    #[test]
    fn roots_bracket() {
        let two = Dyadic::from_int(2);
        let lo = two.nth_root(2, 80, Round::Down);
        let hi = two.nth_root(2, 80, Round::Up);
        assert!(lo.mul(&lo) < two && two < hi.mul(&hi));
        let nine = Dyadic::from_int(9);
        assert_eq!(nine.nth_root(2, 64, Round::Up), Dyadic::from_int(3));
        let small = Dyadic::pow2(-101);
        let r = small.nth_root(3, 64, Round::Down);
        assert!(r.powi(3, 200, Round::Up) <= small);
    }

    #[test]
    fn ordering_matches_rationals() {
        let vals = [-3.5, -1.0, -0.25, 0.0, 1e-9, 0.5, 2.0, 1e12];
        for a in vals {
            for b in vals {
                let (da, db) = (Dyadic::from_f64(a).unwrap(), Dyadic::from_f64(b).unwrap());
                assert_eq!(da.cmp(&db), a.partial_cmp(&b).unwrap());
            }
        }
    }

    #[test]
    fn directed_division() {
        let one = Dyadic::one();
        let three = Dyadic::from_int(3);
        let lo = one.div(&three, 70, Round::Down).to_rational();
        let hi = one.div(&three, 70, Round::Up).to_rational();
        assert!(lo < ratio(1, 3) && ratio(1, 3) < hi);
        let neg = one.neg().div(&three, 70, Round::Down).to_rational();
        assert!(neg < ratio(-1, 3));
    }
}
