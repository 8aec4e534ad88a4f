use num_traits::{One, Zero};

use super::UniPoly;
use crate::expr::{Expr, Rational};

/// `numer / denom` as built from an expression, without cancelling common
/// factors (the zeros of `denom` stay excluded).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    pub numer: UniPoly,
    pub denom: UniPoly,
}

impl RationalFunction {
    pub fn polynomial(p: UniPoly) -> Self {
        RationalFunction { numer: p, denom: UniPoly::one() }
    }

    /// `None` unless `e` uses only rationals, `x`, field operations and
    /// integer powers (or divides by an identically zero polynomial).
    pub fn from_expr(e: &Expr) -> Option<RationalFunction> {
        Some(match e {
            Expr::Lit(r) => RationalFunction::polynomial(UniPoly::constant(r.clone())),
            Expr::Var => RationalFunction::polynomial(UniPoly::x()),
            Expr::Neg(a) => {
                let a = RationalFunction::from_expr(a)?;
                RationalFunction { numer: a.numer.neg(), denom: a.denom }
            }
            Expr::Add(a, b) => RationalFunction::from_expr(a)?.add(&RationalFunction::from_expr(b)?),
            Expr::Sub(a, b) => {
                let b = RationalFunction::from_expr(b)?;
                let nb = RationalFunction { numer: b.numer.neg(), denom: b.denom };
                RationalFunction::from_expr(a)?.add(&nb)
            }
            Expr::Mul(a, b) => RationalFunction::from_expr(a)?.mul(&RationalFunction::from_expr(b)?),
            Expr::Div(a, b) => {
                let b = RationalFunction::from_expr(b)?;
                if b.numer.is_zero() {
                    return None;
                }
                RationalFunction::from_expr(a)?.mul(&RationalFunction { numer: b.denom, denom: b.numer })
            }
            Expr::Pow(a, n) => {
                let a = RationalFunction::from_expr(a)?;
                let k = u32::try_from(n.unsigned_abs()).ok()?;
                if *n >= 0 {
                    RationalFunction { numer: a.numer.pow(k), denom: a.denom.pow(k) }
                } else {
                    if a.numer.is_zero() {
                        return None;
                    }
                    RationalFunction { numer: a.denom.pow(k), denom: a.numer.pow(k) }
                }
            }
            _ => return None,
        })
        .map(RationalFunction::normalize_constant_denom)
    }

    /// Folds a constant denominator into the numerator.
    fn normalize_constant_denom(self) -> RationalFunction {
        if self.denom.is_constant() && !self.denom.is_one_poly() {
            let c = Rational::one() / self.denom.leading();
            return RationalFunction { numer: self.numer.scale(&c), denom: UniPoly::one() };
        }
        self
    }

    pub fn add(&self, o: &RationalFunction) -> RationalFunction {
        if self.denom == o.denom {
            return RationalFunction { numer: self.numer.add(&o.numer), denom: self.denom.clone() };
        }
        RationalFunction {
            numer: self.numer.mul(&o.denom).add(&o.numer.mul(&self.denom)),
            denom: self.denom.mul(&o.denom),
        }
    }

    pub fn mul(&self, o: &RationalFunction) -> RationalFunction {
        RationalFunction { numer: self.numer.mul(&o.numer), denom: self.denom.mul(&o.denom) }
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom.is_constant()
    }

    /// The polynomial when the denominator is constant.
    pub fn as_polynomial(&self) -> Option<UniPoly> {
        if self.denom.is_constant() && !self.denom.is_zero() {
            Some(self.numer.scale(&(Rational::one() / self.denom.leading())))
        } else {
            None
        }
    }

    /// Value at `x`, `None` at a zero of the denominator.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.denom.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.numer.eval(x) / d)
        }
    }
}

impl UniPoly {
    fn is_one_poly(&self) -> bool {
        self.coeffs().len() == 1 && self.coeffs()[0].is_one()
    }
}
