use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{PolyError, UniPoly};
use crate::expr::Rational;
use crate::interval::DyadicInterval;

/// Variable of a [`BiPoly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Integer polynomial in `x` and `y`, keyed by `(x-degree, y-degree)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: BigInt) -> Self {
        BiPoly::from_terms([((0, 0), c)])
    }

    pub fn x() -> Self {
        BiPoly::from_terms([((1, 0), BigInt::one())])
    }

    pub fn y() -> Self {
        BiPoly::from_terms([((0, 1), BigInt::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), BigInt)>) -> Self {
        let mut out = BiPoly::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    /// Convenience for tests and literals: `(x-degree, y-degree, coeff)`.
    pub fn from_ints(terms: &[(u32, u32, i64)]) -> Self {
        BiPoly::from_terms(terms.iter().map(|&(i, j, c)| ((i, j), BigInt::from(c))))
    }

    fn add_term(&mut self, k: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        match v {
            Var::X => self.degree_x(),
            Var::Y => self.degree_y(),
        }
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &BigInt) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &o.terms {
                out.add_term((i + k, j + l), a * b);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> BiPoly {
        let mut acc = BiPoly::constant(BigInt::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `P(y, x)`.
    pub fn swap(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    /// `P(x, -y)`.
    pub fn negate_y(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i, j), if j % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// `P(x, y^n)`.
    pub fn compose_y_power(&self, n: u32) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((i, j * n), c.clone())).collect() }
    }

    /// `q(x)·y - p(x)` for integer polynomials given as rationals.
    pub fn graph_of(p: &UniPoly, q: &UniPoly) -> BiPoly {
        let lcm = p
            .coeffs()
            .iter()
            .chain(q.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let l = Rational::from_integer(lcm);
        let mut out = BiPoly::zero();
        for (i, c) in q.coeffs().iter().enumerate() {
            out.add_term((i as u32, 1), (c * &l).to_integer());
        }
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term((i as u32, 0), -(c * &l).to_integer());
        }
        out.normalized()
    }

    /// Coefficient of `y^k` as a polynomial in `x`.
    pub fn coeff_y(&self, k: u32) -> UniPoly {
        let n = self.degree_x() as usize + 1;
        let mut v = vec![BigInt::zero(); n];
        for (&(i, j), c) in &self.terms {
            if j == k {
                v[i as usize] = c.clone();
            }
        }
        UniPoly::from_bigints(&v)
    }

    /// `p_0, ..., p_n` with `P = Σ p_k(x) y^k`.
    pub fn coefficient_form(&self) -> Vec<UniPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        (0..=self.degree_y()).map(|k| self.coeff_y(k)).collect()
    }

    /// Inverse of [`BiPoly::coefficient_form`]; coefficients must be integers.
    pub fn from_coefficient_form(ps: &[UniPoly]) -> Result<BiPoly, PolyError> {
        let mut out = BiPoly::zero();
        for (k, p) in ps.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                if !c.is_integer() {
                    return Err(PolyError::NonIntegerCoefficient);
                }
                out.add_term((i as u32, k as u32), c.to_integer());
            }
        }
        Ok(out)
    }

    /// Leading coefficient in `y`, as a polynomial in `x`.
    pub fn leading_y(&self) -> UniPoly {
        self.coeff_y(self.degree_y())
    }

    /// Divides out the integer content and makes the coefficient of the
    /// highest `(y, x)` monomial positive.
    pub fn normalized(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let lead = self
            .terms
            .iter()
            .max_by_key(|(&(i, j), _)| (j, i))
            .map(|(_, c)| c.clone())
            .unwrap();
        let g = if lead.is_negative() { -g } else { g };
        BiPoly { terms: self.terms.iter().map(|(k, c)| (*k, c / &g)).collect() }
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            acc += Rational::from_integer(c.clone()) * pow_r(x, i) * pow_r(y, j);
        }
        acc
    }

    /// `P(x0, y)` as a polynomial in `y`.
    pub fn at_x(&self, x0: &Rational) -> UniPoly {
        let mut v = vec![Rational::zero(); self.degree_y() as usize + 1];
        for (&(i, j), c) in &self.terms {
            v[j as usize] += Rational::from_integer(c.clone()) * pow_r(x0, i);
        }
        UniPoly::new(v)
    }

    /// `P(x, y0)` as a polynomial in `x`.
    pub fn at_y(&self, y0: &Rational) -> UniPoly {
        self.swap().at_x(y0)
    }

    /// Enclosure of `P(x, y)` over boxes.
    pub fn eval_interval(&self, x: &DyadicInterval, y: &DyadicInterval) -> DyadicInterval {
        let p = x.precision().max(y.precision());
        let mut acc = DyadicInterval::from_rational(&Rational::zero(), p);
        for (k, row) in self.coefficient_form().iter().enumerate() {
            if row.is_zero() {
                continue;
            }
            let yk = y.powi(k as i64).expect("nonnegative power");
            acc = acc.add(&row.eval_interval(x).mul(&yk));
        }
        acc
    }

    /// Pseudo-remainder of `self` by `d` with respect to `y`.
    pub fn prem_y(&self, d: &BiPoly) -> BiPoly {
        let dd = d.degree_y();
        let lc = d.leading_y();
        let dform = d.coefficient_form();
        let mut r = self.coefficient_form();
        if d.is_zero() {
            return self.clone();
        }
        while !r.is_empty() && r.len() as u32 > dd {
            let top = r.len() - 1;
            let c = r[top].clone();
            if c.is_zero() {
                r.pop();
                continue;
            }
            let shift = top - dd as usize;
            for q in r.iter_mut() {
                *q = q.mul(&lc);
            }
            for (j, dj) in dform.iter().enumerate() {
                r[j + shift] = r[j + shift].sub(&c.mul(dj));
            }
            r.pop();
        }
        while r.last().is_some_and(UniPoly::is_zero) {
            r.pop();
        }
        BiPoly::from_coefficient_form(&r).expect("integer arithmetic stays integral")
    }

    pub fn display_with(&self, xv: &str, yv: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|a, b| (b.0 .1, b.0 .0).cmp(&(a.0 .1, a.0 .0)));
        let mut out = String::new();
        for (&(i, j), c) in keys {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            for (v, d) in [(xv, i), (yv, j)] {
                match d {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{d}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

fn pow_r(r: &Rational, n: u32) -> Rational {
    num_traits::pow(r.clone(), n as usize)
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x", "y"))
    }
}

/// Fraction-free determinant.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Sylvester determinant of `a` (formal degree `len - 1`) and `b`,
/// coefficients listed from degree 0 upwards.
pub fn sylvester_det(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// Monomial coefficients of the polynomial through `(k, values[k])`.
pub fn interpolate(values: &[Rational]) -> UniPoly {
    let n = values.len();
    let mut dd: Vec<Rational> = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / Rational::from_integer(BigInt::from(level));
        }
    }
    // Newton form Σ dd[k] Π_{i<k} (x - i)
    let mut acc = UniPoly::zero();
    for k in (0..n).rev() {
        let factor = UniPoly::from_ints(&[-(k as i64), 1]);
        acc = acc.mul(&factor).add(&UniPoly::constant(dd[k].clone()));
    }
    acc
}

/// `Res_z(A, B)` as a polynomial in `(x, y)`, by evaluation at integer
/// points and interpolation. `a_at` and `b_at` give the `z`-coefficients
/// (formal degree fixed by their lengths) at a point `(x0, y0)`; `dx`, `dy`
/// bound the degrees of the result.
pub fn resultant_by_evaluation(
    a_at: &dyn Fn(&BigInt, &BigInt) -> Vec<BigInt>,
    b_at: &dyn Fn(&BigInt, &BigInt) -> Vec<BigInt>,
    dx: u32,
    dy: u32,
) -> BiPoly {
    let mut rows: Vec<UniPoly> = Vec::new();
    for i in 0..=dx {
        let x0 = BigInt::from(i);
        let vals: Vec<Rational> = (0..=dy)
            .map(|j| {
                let y0 = BigInt::from(j);
                Rational::from_integer(sylvester_det(&a_at(&x0, &y0), &b_at(&x0, &y0)))
            })
            .collect();
        rows.push(interpolate(&vals));
    }
    let mut out = BiPoly::zero();
    for k in 0..=dy as usize {
        let column: Vec<Rational> = rows.iter().map(|r| r.coeff(k)).collect();
        let px = interpolate(&column);
        for (i, c) in px.coeffs().iter().enumerate() {
            debug_assert!(c.is_integer());
            out.add_term((i as u32, k as u32), c.to_integer());
        }
    }
    out
}

fn ipow(b: &BigInt, e: u32) -> BigInt {
    num_traits::pow(b.clone(), e as usize)
}

/// Coefficients in `v` of `P` with the other variable set to `t`.
fn specialise(p: &BiPoly, keep: Var, t: &BigInt) -> Vec<BigInt> {
    let n = p.degree_in(keep) as usize + 1;
    let mut v = vec![BigInt::zero(); n];
    for (&(i, j), c) in &p.terms {
        let (k, other) = match keep {
            Var::Y => (j, i),
            Var::X => (i, j),
        };
        v[k as usize] += c * ipow(t, other);
    }
    v
}

/// Sylvester resultant of `p` and `q` eliminating `v`; the result involves
/// only the other variable.
pub fn resultant(p: &BiPoly, q: &BiPoly, v: Var) -> Result<BiPoly, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    if p.degree_in(v) == 0 || q.degree_in(v) == 0 {
        return Err(PolyError::NoOccurrence);
    }
    let other = match v {
        Var::X => Var::Y,
        Var::Y => Var::X,
    };
    let bound = q.degree_in(v) * p.degree_in(other) + p.degree_in(v) * q.degree_in(other);
    let vals: Vec<Rational> = (0..=bound)
        .map(|t| {
            let t = BigInt::from(t);
            Rational::from_integer(sylvester_det(&specialise(p, v, &t), &specialise(q, v, &t)))
        })
        .collect();
    let r = interpolate(&vals);
    let mut out = BiPoly::zero();
    for (i, c) in r.coeffs().iter().enumerate() {
        let key = match other {
            Var::X => (i as u32, 0),
            Var::Y => (0, i as u32),
        };
        out.add_term(key, c.to_integer());
    }
    Ok(out)
}
