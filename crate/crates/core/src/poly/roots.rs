use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{sturm_isolate, PolyError, UniPoly};
use crate::expr::{Expr, Rational};
use crate::interval::DyadicInterval;

/// All rational roots, ascending.
///
/// A rational root `p/q` of an integer polynomial has `q` dividing the
/// leading coefficient `a`, so every such root is a multiple of `1/a`.
/// Each isolating interval is narrowed below width `1/a`, after which it
/// holds at most one candidate, which is checked exactly.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<Rational>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let sf = p.square_free();
    let lc = sf.leading().to_integer().abs();
    let step = Rational::new(BigInt::one(), lc.clone());
    let mut out = Vec::new();
    for root in sturm_isolate(&sf)? {
        let narrow = root.refine_to(&(&step / Rational::from_integer(BigInt::from(2))));
        if let Some(v) = narrow.exact_value() {
            out.push(v);
            continue;
        }
        let lo = (narrow.lower() * Rational::from_integer(lc.clone())).ceil().to_integer();
        let hi = (narrow.upper() * Rational::from_integer(lc.clone())).floor().to_integer();
        let mut k = lo;
        while k <= hi {
            let cand = Rational::new(k.clone(), lc.clone());
            if sf.eval(&cand).is_zero() {
                out.push(cand);
            }
            k += 1;
        }
    }
    out.sort();
    Ok(out)
}

/// Largest `k ≥ 2` with `p(x) = reduced(x^k)`, if any.
pub fn substitution_reduce(p: &UniPoly) -> Result<Option<(usize, UniPoly)>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let k = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(i, c)| *i > 0 && !c.is_zero())
        .fold(0usize, |g, (i, _)| g.gcd(&i));
    if k < 2 {
        return Ok(None);
    }
    let reduced = UniPoly::new(p.coeffs().iter().step_by(k).cloned().collect());
    Ok(Some((k, reduced)))
}

/// `n = s² · d` with `d` squarefree (trial division, then a perfect-square
/// check on the remaining cofactor).
pub fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive());
    let mut s = BigInt::one();
    let mut d = BigInt::one();
    let mut m = n.clone();
    let mut f = BigInt::from(2);
    let limit = BigInt::from(1_000_000u32);
    while &f * &f <= m && f <= limit {
        let mut e = 0u32;
        while (&m % &f).is_zero() {
            m /= &f;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= &f;
        }
        if e % 2 == 1 {
            d *= &f;
        }
        f += if f == BigInt::from(2) { 1 } else { 2 };
    }
    if !m.is_one() {
        let r = m.sqrt();
        if &r * &r == m {
            s *= r;
        } else {
            d *= m;
        }
    }
    (s, d)
}

/// `a + b·√d` with `d` a squarefree integer ≥ 1; `b = 0` iff the value is
/// rational, in which case `d = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    pub a: Rational,
    pub b: Rational,
    pub d: BigInt,
}

impl QuadraticSurd {
    pub fn rational(a: Rational) -> Self {
        QuadraticSurd { a, b: Rational::zero(), d: BigInt::one() }
    }

    pub fn new(a: Rational, b: Rational, d: BigInt) -> Self {
        if b.is_zero() || d.is_zero() {
            return QuadraticSurd::rational(a);
        }
        let (s, d) = square_part(&d);
        if d.is_one() {
            return QuadraticSurd::rational(a + b * Rational::from_integer(s));
        }
        QuadraticSurd { a, b: b * Rational::from_integer(s), d }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn elem(&self) -> QuadElem {
        QuadElem { a: self.a.clone(), b: self.b.clone(), d: self.d.clone() }
    }

    pub fn enclosure(&self, precision: u32) -> DyadicInterval {
        let p = precision + 8;
        let a = DyadicInterval::from_rational(&self.a, p);
        if self.is_rational() {
            return a.with_precision(precision);
        }
        let root = DyadicInterval::from_rational(&Rational::from_integer(self.d.clone()), p)
            .root(2)
            .expect("positive radicand");
        a.add(&DyadicInterval::from_rational(&self.b, p).mul(&root)).with_precision(precision)
    }

    pub fn to_expr(&self) -> Expr {
        if self.is_rational() {
            return Expr::Lit(self.a.clone());
        }
        let r = Expr::Lit(Rational::from_integer(self.d.clone())).sqrt();
        let mag = self.b.abs();
        let term = if mag.is_one() { r } else { Expr::Lit(mag) * r };
        if self.a.is_zero() {
            return if self.b.is_negative() { -term } else { term };
        }
        if self.b.is_negative() {
            Expr::Lit(self.a.clone()) - term
        } else {
            Expr::Lit(self.a.clone()) + term
        }
    }

    pub fn sign(&self) -> i32 {
        self.elem().sign()
    }

    pub fn cmp_value(&self, other: &QuadraticSurd) -> Option<Ordering> {
        if self.d != other.d && !self.is_rational() && !other.is_rational() {
            return None;
        }
        let d = if self.is_rational() { other.d.clone() } else { self.d.clone() };
        let diff = QuadElem { a: &self.a - &other.a, b: &self.b - &other.b, d };
        Some(diff.sign().cmp(&0))
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

/// Element `a + b√d` of the field Q(√d).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadElem {
    pub a: Rational,
    pub b: Rational,
    pub d: BigInt,
}

impl QuadElem {
    pub fn from_rational(a: Rational, d: &BigInt) -> Self {
        QuadElem { a, b: Rational::zero(), d: d.clone() }
    }

    fn dr(&self) -> Rational {
        Rational::from_integer(self.d.clone())
    }

    pub fn add(&self, o: &QuadElem) -> QuadElem {
        QuadElem { a: &self.a + &o.a, b: &self.b + &o.b, d: self.d.clone() }
    }

    pub fn sub(&self, o: &QuadElem) -> QuadElem {
        QuadElem { a: &self.a - &o.a, b: &self.b - &o.b, d: self.d.clone() }
    }

    pub fn mul(&self, o: &QuadElem) -> QuadElem {
        QuadElem {
            a: &self.a * &o.a + &self.b * &o.b * self.dr(),
            b: &self.a * &o.b + &self.b * &o.a,
            d: self.d.clone(),
        }
    }

    /// `None` when dividing by zero.
    pub fn div(&self, o: &QuadElem) -> Option<QuadElem> {
        let norm = &o.a * &o.a - &o.b * &o.b * o.dr();
        if norm.is_zero() {
            return None;
        }
        let conj = QuadElem { a: o.a.clone() / &norm, b: -o.b.clone() / &norm, d: o.d.clone() };
        Some(self.mul(&conj))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of `a + b√d`.
    pub fn sign(&self) -> i32 {
        let sa = sgn(&self.a);
        let sb = sgn(&self.b);
        if sb == 0 || self.d.is_zero() {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with b²d
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * self.dr();
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }
}

fn sgn(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl UniPoly {
    pub fn eval_quad(&self, x: &QuadElem) -> QuadElem {
        let mut acc = QuadElem::from_rational(Rational::zero(), &x.d);
        for c in self.coeffs().iter().rev() {
            acc = acc.mul(x).add(&QuadElem::from_rational(c.clone(), &x.d));
        }
        acc
    }
}

/// Exact real roots of a polynomial of degree 1 or 2, ascending.
pub fn quadratic_solve(p: &UniPoly) -> Result<Vec<QuadraticSurd>, PolyError> {
    match p.degree() {
        Some(1) => Ok(vec![QuadraticSurd::rational(-p.coeff(0) / p.coeff(1))]),
        Some(2) => {
            let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
            let disc = &b * &b - Rational::from_integer(BigInt::from(4)) * &a * &c;
            let two_a = Rational::from_integer(BigInt::from(2)) * &a;
            let centre = -b / &two_a;
            if disc.is_negative() {
                return Ok(Vec::new());
            }
            if disc.is_zero() {
                return Ok(vec![QuadraticSurd::rational(centre)]);
            }
            // √(n/m) = √(n·m)/m
            let radicand = disc.numer() * disc.denom();
            let scale = Rational::new(BigInt::one(), disc.denom().clone()) / two_a.abs();
            let lo = QuadraticSurd::new(centre.clone(), -scale.clone(), radicand.clone());
            let hi = QuadraticSurd::new(centre, scale, radicand);
            if lo.is_rational() {
                let (x, y) = (lo.a.clone(), hi.a.clone());
                return Ok(if x <= y {
                    vec![lo, hi]
                } else {
                    vec![hi, lo]
                });
            }
            Ok(vec![lo, hi])
        }
        _ => Err(PolyError::DegreeOutOfRange),
    }
}
