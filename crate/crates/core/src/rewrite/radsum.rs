use num_traits::{One, Signed, Zero};

use crate::expr::{Expr, Rational};
use crate::poly::UniPoly;

/// `c · root(index, radicand)` with a rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadTerm {
    pub coeff: Rational,
    pub index: u32,
    pub radicand: UniPoly,
}

impl RadTerm {
    fn root_expr(&self) -> Expr {
        Expr::Root(self.index, Box::new(self.radicand.to_expr()))
    }

    fn scaled_expr(&self, c: &Rational) -> Expr {
        scaled(c, self.root_expr())
    }
}

/// `c · e`, omitting a unit coefficient.
fn scaled(c: &Rational, e: Expr) -> Expr {
    if c.is_one() {
        e
    } else {
        Expr::Lit(c.clone()) * e
    }
}

/// A polynomial plus a rational combination of real roots of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadSum {
    pub poly: UniPoly,
    pub terms: Vec<RadTerm>,
}

impl RadSum {
    pub fn polynomial(p: UniPoly) -> Self {
        RadSum { poly: p, terms: Vec::new() }
    }

    pub fn from_expr(e: &Expr) -> Option<RadSum> {
        if let Ok(p) = UniPoly::from_expr(e) {
            return Some(RadSum::polynomial(p));
        }
        match e {
            Expr::Root(n, a) => {
                let p = UniPoly::from_expr(a).ok()?;
                Some(RadSum {
                    poly: UniPoly::zero(),
                    terms: vec![RadTerm { coeff: Rational::one(), index: *n, radicand: p }],
                })
            }
            Expr::Neg(a) => Some(RadSum::from_expr(a)?.scale(&-Rational::one())),
            Expr::Add(a, b) => Some(RadSum::from_expr(a)?.add(&RadSum::from_expr(b)?)),
            Expr::Sub(a, b) => {
                Some(RadSum::from_expr(a)?.add(&RadSum::from_expr(b)?.scale(&-Rational::one())))
            }
            Expr::Mul(a, b) => RadSum::from_expr(a)?.mul(&RadSum::from_expr(b)?),
            Expr::Div(a, b) => {
                let c = b.as_lit().filter(|c| !c.is_zero())?;
                Some(RadSum::from_expr(a)?.scale(&(Rational::one() / c)))
            }
            _ => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.is_empty()
    }

    fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() && self.poly.is_constant() {
            Some(self.poly.coeff(0))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> RadSum {
        let mut out = RadSum { poly: self.poly.scale(c), terms: Vec::new() };
        for t in &self.terms {
            out.push(RadTerm { coeff: &t.coeff * c, ..t.clone() });
        }
        out
    }

    fn push(&mut self, t: RadTerm) {
        if t.coeff.is_zero() || t.radicand.is_zero() {
            return;
        }
        if t.radicand.is_constant() {
            if let Some(r) = crate::expr::rational_root(&t.radicand.coeff(0), t.index) {
                self.poly = self.poly.add(&UniPoly::constant(&t.coeff * r));
                return;
            }
        }
        if let Some(same) = self.terms.iter_mut().find(|s| s.index == t.index && s.radicand == t.radicand) {
            same.coeff += t.coeff;
            if same.coeff.is_zero() {
                self.terms.retain(|s| !s.coeff.is_zero());
            }
            return;
        }
        self.terms.push(t);
    }

    pub fn add(&self, o: &RadSum) -> RadSum {
        let mut out = self.clone();
        out.poly = out.poly.add(&o.poly);
        for t in &o.terms {
            out.push(t.clone());
        }
        out
    }

    /// Products stay in the form only when one side is constant or both
    /// are single square roots.
    pub fn mul(&self, o: &RadSum) -> Option<RadSum> {
        if let Some(c) = self.as_constant() {
            return Some(o.scale(&c));
        }
        if let Some(c) = o.as_constant() {
            return Some(self.scale(&c));
        }
        if self.is_polynomial() && o.is_polynomial() {
            return Some(RadSum::polynomial(self.poly.mul(&o.poly)));
        }
        match (self.terms.as_slice(), o.terms.as_slice()) {
            ([a], [b]) if self.poly.is_zero() && o.poly.is_zero() && a.index == 2 && b.index == 2 => {
                if a.radicand == b.radicand {
                    return Some(RadSum::polynomial(a.radicand.scale(&(&a.coeff * &b.coeff))));
                }
                let mut out = RadSum::polynomial(UniPoly::zero());
                out.push(RadTerm { coeff: &a.coeff * &b.coeff, index: 2, radicand: a.radicand.mul(&b.radicand) });
                Some(out)
            }
            _ => None,
        }
    }

    pub fn to_expr(&self) -> Expr {
        let mut acc: Option<Expr> = if self.poly.is_zero() { None } else { Some(self.poly.to_expr()) };
        for t in &self.terms {
            acc = Some(match acc {
                None => t.scaled_expr(&t.coeff),
                Some(a) if t.coeff.is_negative() => a - t.scaled_expr(&-t.coeff.clone()),
                Some(a) => a + t.scaled_expr(&t.coeff),
            });
        }
        acc.unwrap_or_else(|| Expr::int(0))
    }

    /// `self²` spelled out term by term, with cross products of square roots
    /// merged under one root and polynomial parts left unexpanded.
    pub fn squared_expr(&self) -> Option<Expr> {
        if let Some(c) = self.as_constant() {
            return Some(Expr::Lit(&c * &c));
        }
        if self.is_polynomial() {
            return Some(self.poly.to_expr().pow(2));
        }
        if self.terms.iter().any(|t| t.index != 2) {
            return None;
        }
        let mut pieces: Vec<Expr> = Vec::new();
        for t in &self.terms {
            pieces.push(scaled(&(&t.coeff * &t.coeff), t.radicand.to_expr()));
        }
        if !self.poly.is_zero() {
            pieces.push(self.poly.to_expr().pow(2));
        }
        let two = Rational::from_integer(2.into());
        let mut cross: Vec<(Rational, Expr)> = Vec::new();
        if !self.poly.is_zero() {
            for t in &self.terms {
                let c = &two * &t.coeff;
                cross.push((c, self.poly.to_expr() * t.root_expr()));
            }
        }
        for i in 0..self.terms.len() {
            for j in i + 1..self.terms.len() {
                let (a, b) = (&self.terms[i], &self.terms[j]);
                let c = &two * &a.coeff * &b.coeff;
                let root = Expr::Root(2, Box::new(a.radicand.to_expr() * b.radicand.to_expr()));
                cross.push((c, root));
            }
        }
        let mut acc = pieces.into_iter().reduce(|a, b| a + b).expect("at least one term");
        for (c, e) in cross {
            acc = if c.is_negative() { acc - scaled(&-c, e) } else { acc + scaled(&c, e) };
        }
        Some(acc)
    }

    /// `self^k` for a single root term of index `k` (`c^k · radicand`) or
    /// a polynomial.
    pub fn power_expr(&self, k: u32) -> Option<Expr> {
        if k == 2 {
            return self.squared_expr();
        }
        if let Some(c) = self.as_constant() {
            return Some(Expr::Lit(num_traits::pow(c, k as usize)));
        }
        if self.is_polynomial() {
            return Some(self.poly.to_expr().pow(k as i64));
        }
        match self.terms.as_slice() {
            [t] if self.poly.is_zero() && t.index == k => {
                Some(scaled(&num_traits::pow(t.coeff.clone(), k as usize), t.radicand.to_expr()))
            }
            _ => None,
        }
    }
}
