//! Expression trees over the single real variable `x`.
//!
//! Literals are exact rationals; no floating point value ever enters an
//! [`Expr`]. The function inventory is fixed: roots, `exp`, `ln`, `sin`,
//! `cos` and the two real branches of Lambert W.

mod calculus;
mod domain;
mod equation;
mod natural;

use std::fmt;
use std::ops;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use calculus::ExactEval;
pub use domain::{Domain, Endpoint, RealInterval};
pub use equation::Equation;
pub use natural::{DomainCondition, NaturalDomain, Predicate};

/// Exact rational scalar. The denominator is always positive and the
/// fraction is kept in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("point {0} lies outside the natural domain")]
    DomainViolation(String),
    #[error("no derivative rule for {0}")]
    UnsupportedNode(&'static str),
}

/// Real branch of Lambert W.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// W₀, defined on [−1/e, ∞), values ≥ −1.
    Principal,
    /// W₋₁, defined on [−1/e, 0), values ≤ −1.
    Lower,
}

impl Branch {
    pub fn index(self) -> i32 {
        match self {
            Branch::Principal => 0,
            Branch::Lower => -1,
        }
    }

    pub fn from_index(k: i64) -> Option<Branch> {
        match k {
            0 => Some(Branch::Principal),
            -1 => Some(Branch::Lower),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Lit(Rational),
    Var,
    E,
    Pi,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Integer power, possibly negative.
    Pow(Box<Expr>, i64),
    /// Real n-th root, n ≥ 2. Odd roots of negative numbers are real.
    Root(u32, Box<Expr>),
    Exp(Box<Expr>),
    Ln(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    W(Branch, Box<Expr>),
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl Expr {
    pub fn x() -> Expr {
        Expr::Var
    }

    pub fn lit(r: Rational) -> Expr {
        Expr::Lit(r)
    }

    pub fn int(n: i64) -> Expr {
        Expr::Lit(int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Expr {
        Expr::Lit(ratio(n, d))
    }

    pub fn pow(self, n: i64) -> Expr {
        Expr::Pow(Box::new(self), n)
    }

    pub fn sqrt(self) -> Expr {
        Expr::Root(2, Box::new(self))
    }

    /// Real n-th root; panics if `n < 2`.
    pub fn root(self, n: u32) -> Expr {
        assert!(n >= 2, "root index must be at least 2");
        Expr::Root(n, Box::new(self))
    }

    pub fn exp(self) -> Expr {
        Expr::Exp(Box::new(self))
    }

    pub fn ln(self) -> Expr {
        Expr::Ln(Box::new(self))
    }

    pub fn sin(self) -> Expr {
        Expr::Sin(Box::new(self))
    }

    pub fn cos(self) -> Expr {
        Expr::Cos(Box::new(self))
    }

    pub fn lambert_w(branch: Branch, arg: Expr) -> Expr {
        Expr::W(branch, Box::new(arg))
    }

    /// `a^x` for a positive constant base, spelled `exp(x * ln(a))`.
    pub fn base_power(base: Expr) -> Expr {
        (Expr::Var * base.ln()).exp()
    }

    pub fn as_lit(&self) -> Option<&Rational> {
        match self {
            Expr::Lit(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_zero_lit(&self) -> bool {
        matches!(self, Expr::Lit(r) if r.is_zero())
    }

    pub fn is_one_lit(&self) -> bool {
        matches!(self, Expr::Lit(r) if r.is_one())
    }

    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Lit(_) | Expr::Var | Expr::E | Expr::Pi => vec![],
            Expr::Neg(a)
            | Expr::Pow(a, _)
            | Expr::Root(_, a)
            | Expr::Exp(a)
            | Expr::Ln(a)
            | Expr::Sin(a)
            | Expr::Cos(a)
            | Expr::W(_, a) => vec![a],
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => vec![a, b],
        }
    }

    pub fn contains_var(&self) -> bool {
        match self {
            Expr::Var => true,
            _ => self.children().into_iter().any(Expr::contains_var),
        }
    }

    pub fn is_constant(&self) -> bool {
        !self.contains_var()
    }

    pub fn any_node(&self, pred: &dyn Fn(&Expr) -> bool) -> bool {
        pred(self) || self.children().into_iter().any(|c| c.any_node(pred))
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().into_iter().map(Expr::node_count).sum::<usize>()
    }

    /// True when the natural domain is all of ℝ by construction (no roots,
    /// logarithms, divisions, negative powers or Lambert W anywhere).
    pub fn is_total(&self) -> bool {
        !self.any_node(&|e| {
            matches!(
                e,
                Expr::Div(..) | Expr::Root(..) | Expr::Ln(_) | Expr::W(..)
            ) || matches!(e, Expr::Pow(_, n) if *n < 0)
        })
    }

    /// Replace `x` by `value` everywhere.
    pub fn substitute(&self, value: &Expr) -> Expr {
        self.map_children(&|c| c.substitute(value), value)
    }

    fn map_children(&self, f: &dyn Fn(&Expr) -> Expr, var_value: &Expr) -> Expr {
        let b = |e: &Expr| Box::new(f(e));
        match self {
            Expr::Var => var_value.clone(),
            Expr::Lit(_) | Expr::E | Expr::Pi => self.clone(),
            Expr::Neg(a) => Expr::Neg(b(a)),
            Expr::Add(l, r) => Expr::Add(b(l), b(r)),
            Expr::Sub(l, r) => Expr::Sub(b(l), b(r)),
            Expr::Mul(l, r) => Expr::Mul(b(l), b(r)),
            Expr::Div(l, r) => Expr::Div(b(l), b(r)),
            Expr::Pow(a, n) => Expr::Pow(b(a), *n),
            Expr::Root(n, a) => Expr::Root(*n, b(a)),
            Expr::Exp(a) => Expr::Exp(b(a)),
            Expr::Ln(a) => Expr::Ln(b(a)),
            Expr::Sin(a) => Expr::Sin(b(a)),
            Expr::Cos(a) => Expr::Cos(b(a)),
            Expr::W(k, a) => Expr::W(*k, b(a)),
        }
    }

    /// Constant folding: literal arithmetic plus the identities that can
    /// never change a natural domain (`u + 0`, `u * 1`, `u^1`, `exp(ln a)`
    /// for a positive literal or flagged constant `a`, ...).
    pub fn fold(&self) -> Expr {
        let folded = self.map_children(&|c| c.fold(), &Expr::Var);
        fold_node(folded)
    }

    /// Structural sign on the natural domain, without any numerics.
    pub fn structural_sign(&self) -> StructuralSign {
        use StructuralSign::*;
        match self {
            Expr::Lit(r) => {
                if r.is_zero() {
                    Zero
                } else if r.is_positive() {
                    Positive
                } else {
                    Negative
                }
            }
            Expr::E | Expr::Pi | Expr::Exp(_) => Positive,
            Expr::Var | Expr::Ln(_) | Expr::Sin(_) | Expr::Cos(_) => Unknown,
            Expr::W(Branch::Lower, _) => Negative,
            Expr::W(Branch::Principal, a) => match a.structural_sign() {
                Zero => Zero,
                Positive => Positive,
                NonNegative => NonNegative,
                Negative => Negative,
                NonPositive => NonPositive,
                Unknown => Unknown,
            },
            Expr::Neg(a) => a.structural_sign().negate(),
            Expr::Root(n, a) => {
                let s = a.structural_sign();
                if n % 2 == 0 {
                    match s {
                        Positive => Positive,
                        Zero => Zero,
                        _ => NonNegative,
                    }
                } else {
                    s
                }
            }
            Expr::Pow(a, n) => {
                let s = a.structural_sign();
                if *n == 0 {
                    Positive
                } else if n % 2 == 0 {
                    match s {
                        Positive | Negative => Positive,
                        Zero => Zero,
                        _ => NonNegative,
                    }
                } else {
                    s
                }
            }
            Expr::Add(a, b) => a.structural_sign().add(b.structural_sign()),
            Expr::Sub(a, b) => a.structural_sign().add(b.structural_sign().negate()),
            Expr::Mul(a, b) | Expr::Div(a, b) => a.structural_sign().mul(b.structural_sign()),
        }
    }
}

fn fold_node(e: Expr) -> Expr {
    use Expr::*;
    match e {
        Neg(a) => match *a {
            Lit(r) => Lit(-r),
            Neg(inner) => *inner,
            other => Neg(Box::new(other)),
        },
        Add(l, r) => match (*l, *r) {
            (Lit(a), Lit(b)) => Lit(a + b),
            (Lit(a), other) if a.is_zero() => other,
            (other, Lit(b)) if b.is_zero() => other,
            (a, b) => Add(Box::new(a), Box::new(b)),
        },
        Sub(l, r) => match (*l, *r) {
            (Lit(a), Lit(b)) => Lit(a - b),
            (other, Lit(b)) if b.is_zero() => other,
            (Lit(a), other) if a.is_zero() => fold_node(Neg(Box::new(other))),
            (a, b) => Sub(Box::new(a), Box::new(b)),
        },
        Mul(l, r) => match (*l, *r) {
            (Lit(a), Lit(b)) => Lit(a * b),
            (Lit(a), other) if a.is_one() => other,
            (other, Lit(b)) if b.is_one() => other,
            (Lit(a), other) if a.is_zero() && other.is_total() => Lit(a),
            (other, Lit(b)) if b.is_zero() && other.is_total() => Lit(b),
            (a, b) => Mul(Box::new(a), Box::new(b)),
        },
        Div(l, r) => match (*l, *r) {
            (Lit(a), Lit(b)) if !b.is_zero() => Lit(a / b),
            (other, Lit(b)) if b.is_one() => other,
            (a, b) => Div(Box::new(a), Box::new(b)),
        },
        Pow(a, n) => match (*a, n) {
            (other, 1) => other,
            (Lit(r), n) if n >= 0 => Lit(rational_pow(&r, n)),
            (Lit(r), n) if !r.is_zero() => Lit(rational_pow(&r, n)),
            (other, n) => Pow(Box::new(other), n),
        },
        Root(n, a) => match *a {
            Lit(r) => match rational_root(&r, n) {
                Some(v) => Lit(v),
                None => Root(n, Box::new(Lit(r))),
            },
            other => Root(n, Box::new(other)),
        },
        Exp(a) => match *a {
            Lit(r) if r.is_zero() => Lit(Rational::one()),
            Ln(inner) if inner.is_constant() && inner.structural_sign().is_positive() => *inner,
            other => Exp(Box::new(other)),
        },
        Ln(a) => match *a {
            Lit(r) if r.is_one() => Lit(Rational::zero()),
            E => Lit(Rational::one()),
            Exp(inner) => *inner,
            other => Ln(Box::new(other)),
        },
        Sin(a) => match *a {
            Lit(r) if r.is_zero() => Lit(r),
            other => Sin(Box::new(other)),
        },
        Cos(a) => match *a {
            Lit(r) if r.is_zero() => Lit(Rational::one()),
            other => Cos(Box::new(other)),
        },
        W(Branch::Principal, a) => match *a {
            Lit(r) if r.is_zero() => Lit(r),
            other => W(Branch::Principal, Box::new(other)),
        },
        other => other,
    }
}

/// `r^n` for integer `n`; the caller guarantees `r ≠ 0` when `n < 0`.
pub fn rational_pow(r: &Rational, n: i64) -> Rational {
    let p = num_traits::pow(r.clone(), n.unsigned_abs() as usize);
    if n < 0 {
        p.recip()
    } else {
        p
    }
}

/// Exact real n-th root of a rational when it is rational.
pub fn rational_root(r: &Rational, n: u32) -> Option<Rational> {
    if r.is_negative() {
        if n % 2 == 0 {
            return None;
        }
        return rational_root(&-r, n).map(|v| -v);
    }
    let num = r.numer().nth_root(n);
    let den = r.denom().nth_root(n);
    if num.pow(n) == *r.numer() && den.pow(n) == *r.denom() {
        Some(Rational::new(num, den))
    } else {
        None
    }
}

/// Sign information derivable from the shape of an expression alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructuralSign {
    Positive,
    NonNegative,
    Zero,
    NonPositive,
    Negative,
    Unknown,
}

impl StructuralSign {
    pub fn negate(self) -> Self {
        use StructuralSign::*;
        match self {
            Positive => Negative,
            NonNegative => NonPositive,
            Zero => Zero,
            NonPositive => NonNegative,
            Negative => Positive,
            Unknown => Unknown,
        }
    }

    pub fn add(self, other: Self) -> Self {
        use StructuralSign::*;
        match (self, other) {
            (Zero, s) | (s, Zero) => s,
            (Positive, Positive | NonNegative) | (NonNegative, Positive) => Positive,
            (NonNegative, NonNegative) => NonNegative,
            (Negative, Negative | NonPositive) | (NonPositive, Negative) => Negative,
            (NonPositive, NonPositive) => NonPositive,
            _ => Unknown,
        }
    }

    pub fn mul(self, other: Self) -> Self {
        use StructuralSign::*;
        match (self, other) {
            (Zero, _) | (_, Zero) => Zero,
            (Unknown, _) | (_, Unknown) => Unknown,
            (a, b) => {
                let neg = a.is_nonpositive() != b.is_nonpositive();
                let strict = a.is_strict() && b.is_strict();
                match (neg, strict) {
                    (false, true) => Positive,
                    (false, false) => NonNegative,
                    (true, true) => Negative,
                    (true, false) => NonPositive,
                }
            }
        }
    }

    fn is_strict(self) -> bool {
        matches!(self, StructuralSign::Positive | StructuralSign::Negative)
    }

    pub fn is_positive(self) -> bool {
        self == StructuralSign::Positive
    }

    pub fn is_negative(self) -> bool {
        self == StructuralSign::Negative
    }

    pub fn is_nonnegative(self) -> bool {
        matches!(
            self,
            StructuralSign::Positive | StructuralSign::NonNegative | StructuralSign::Zero
        )
    }

    pub fn is_nonpositive(self) -> bool {
        matches!(
            self,
            StructuralSign::Negative | StructuralSign::NonPositive | StructuralSign::Zero
        )
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl ops::$trait for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Expr {
        Expr::int(n)
    }
}

impl From<Rational> for Expr {
    fn from(r: Rational) -> Expr {
        Expr::Lit(r)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::render_expr(self))
    }
}
