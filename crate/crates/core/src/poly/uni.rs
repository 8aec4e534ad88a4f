use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::PolyError;
use crate::expr::{Expr, Rational};
use crate::interval::DyadicInterval;
use crate::parse::render_rational;

/// Univariate polynomial over Q, coefficients indexed by degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        UniPoly::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn x() -> Self {
        UniPoly::new(vec![Rational::zero(), Rational::one()])
    }

    /// `c · x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        UniPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, n: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Sign as `x → +∞` (`positive = true`) or `x → −∞`.
    pub fn sign_at_infinity(&self, positive: bool) -> i32 {
        let lc = self.leading();
        if lc.is_zero() {
            return 0;
        }
        let s = if lc.is_positive() { 1 } else { -1 };
        let odd = self.degree().unwrap_or(0) % 2 == 1;
        if !positive && odd {
            -s
        } else {
            s
        }
    }

    /// Horner evaluation over intervals.
    pub fn eval_interval(&self, x: &DyadicInterval) -> DyadicInterval {
        let p = x.precision();
        let mut acc = DyadicInterval::from_rational(&Rational::zero(), p);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&DyadicInterval::from_rational(c, p));
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.primitive_rational();
        }
        a.monic()
    }

    /// Scaled copy with integer, content-free coefficients (sign kept).
    /// Keeps remainders small in Euclid's algorithm.
    fn primitive_rational(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let ints = self.integer_coeffs();
        UniPoly::from_bigints(&ints)
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in &mut ints {
                *c = &*c / &g;
            }
        }
        if ints.last().is_some_and(Signed::is_negative) {
            for c in &mut ints {
                *c = -&*c;
            }
        }
        ints
    }

    /// Integer, content-free, positive-leading scalar multiple.
    pub fn primitive(&self) -> UniPoly {
        UniPoly::from_bigints(&self.integer_coeffs())
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn square_free(&self) -> UniPoly {
        if self.is_constant() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.primitive()
    }

    /// `p(x^k)`.
    pub fn compose_power(&self, k: usize) -> UniPoly {
        let mut v = vec![Rational::zero(); (self.coeffs.len().max(1) - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        UniPoly::new(v)
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    /// Expands `e` when it only uses rationals, `x`, `+ - *`, division by a
    /// nonzero literal and nonnegative integer powers.
    pub fn from_expr(e: &Expr) -> Result<UniPoly, PolyError> {
        Ok(match e {
            Expr::Lit(r) => UniPoly::constant(r.clone()),
            Expr::Var => UniPoly::x(),
            Expr::Neg(a) => UniPoly::from_expr(a)?.neg(),
            Expr::Add(a, b) => UniPoly::from_expr(a)?.add(&UniPoly::from_expr(b)?),
            Expr::Sub(a, b) => UniPoly::from_expr(a)?.sub(&UniPoly::from_expr(b)?),
            Expr::Mul(a, b) => UniPoly::from_expr(a)?.mul(&UniPoly::from_expr(b)?),
            Expr::Div(a, b) => match b.as_ref() {
                Expr::Lit(c) if !c.is_zero() => {
                    UniPoly::from_expr(a)?.scale(&(Rational::one() / c))
                }
                _ => return Err(PolyError::NotPolynomial),
            },
            Expr::Pow(a, n) if *n >= 0 => {
                let n = u32::try_from(*n).map_err(|_| PolyError::NotPolynomial)?;
                UniPoly::from_expr(a)?.pow(n)
            }
            _ => return Err(PolyError::NotPolynomial),
        })
    }

    /// Expression with terms in descending degree, e.g. `x^2 - 52*x + 64`.
    pub fn to_expr(&self) -> Expr {
        let mut acc: Option<Expr> = None;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = |c: &Rational| {
                let power = match k {
                    0 => return Expr::Lit(c.clone()),
                    1 => Expr::Var,
                    _ => Expr::Var.pow(k as i64),
                };
                if c.is_one() {
                    power
                } else {
                    Expr::Lit(c.clone()) * power
                }
            };
            acc = Some(match acc {
                None if (-c).is_one() && k > 0 => -term(&-c),
                None => term(c),
                Some(a) if c.is_negative() => a - term(&-c),
                Some(a) => a + term(c),
            });
        }
        acc.unwrap_or_else(|| Expr::int(0))
    }

    /// Rendering in the named variable.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&render_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{}*{power}", render_rational(&mag)));
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}
