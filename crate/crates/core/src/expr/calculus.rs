use num_traits::{One, Signed, Zero};

use super::{rational_pow, rational_root, Branch, Expr, ExprError, Rational};

/// Result of exact rational evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactEval {
    Value(Rational),
    /// Some subterm takes an irrational (or undecided) value.
    NotExact,
}

impl ExactEval {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            ExactEval::Value(v) => Some(v),
            ExactEval::NotExact => None,
        }
    }
}

impl Expr {
    /// Symbolic derivative with respect to `x`, constant-folded.
    ///
    /// Lambert W is differentiated with `W'(z) = exp(-W(z)) / (1 + W(z))`.
    pub fn differentiate(&self) -> Expr {
        derive(self).fold()
    }

    /// Like [`Expr::differentiate`] but refuses Lambert W nodes.
    pub fn differentiate_strict(&self) -> Result<Expr, ExprError> {
        if self.any_node(&|e| matches!(e, Expr::W(..))) {
            return Err(ExprError::UnsupportedNode("LambertW"));
        }
        Ok(self.differentiate())
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate_exact(&self, x0: &Rational) -> Result<ExactEval, ExprError> {
        eval_exact(self, x0)
    }
}

fn derive(e: &Expr) -> Expr {
    use Expr::*;
    let zero = || Expr::int(0);
    match e {
        Lit(_) | E | Pi => zero(),
        Var => Expr::int(1),
        Neg(a) => -derive(a).fold(),
        Add(a, b) => derive(a).fold() + derive(b).fold(),
        Sub(a, b) => derive(a).fold() - derive(b).fold(),
        Mul(a, b) => {
            if a.is_constant() {
                return (*a.clone() * derive(b).fold()).fold();
            }
            if b.is_constant() {
                return (derive(a).fold() * *b.clone()).fold();
            }
            (derive(a).fold() * *b.clone()).fold() + (*a.clone() * derive(b).fold()).fold()
        }
        Div(a, b) => {
            if b.is_constant() {
                return (derive(a).fold() / *b.clone()).fold();
            }
            let num = (derive(a).fold() * *b.clone()).fold() - (*a.clone() * derive(b).fold()).fold();
            num.fold() / b.as_ref().clone().pow(2)
        }
        Pow(a, n) => {
            if *n == 0 {
                return zero();
            }
            let outer = (Expr::int(*n) * a.as_ref().clone().pow(n - 1)).fold();
            (outer * derive(a).fold()).fold()
        }
        Root(n, a) => {
            // (u^(1/n))' = u' / (n * root(n, u)^(n-1))
            let denom = (Expr::int(*n as i64) * Root(*n, a.clone()).pow(*n as i64 - 1)).fold();
            (derive(a).fold() / denom).fold()
        }
        Exp(a) => (Exp(a.clone()) * derive(a).fold()).fold(),
        Ln(a) => (derive(a).fold() / *a.clone()).fold(),
        Sin(a) => (Cos(a.clone()) * derive(a).fold()).fold(),
        Cos(a) => (-(Sin(a.clone())) * derive(a).fold()).fold(),
        W(k, a) => {
            let w = W(*k, a.clone());
            let dw = (-w.clone()).exp() / (Expr::int(1) + w);
            (dw * derive(a).fold()).fold()
        }
    }
}

fn violation(x0: &Rational) -> ExprError {
    ExprError::DomainViolation(x0.to_string())
}

fn eval_exact(e: &Expr, x0: &Rational) -> Result<ExactEval, ExprError> {
    use ExactEval::*;
    use Expr::*;
    macro_rules! ev {
        ($a:expr) => {
            match eval_exact($a, x0)? {
                Value(v) => v,
                NotExact => return Ok(NotExact),
            }
        };
    }
    let v = match e {
        Lit(r) => r.clone(),
        Var => x0.clone(),
        E | Pi => return Ok(NotExact),
        Neg(a) => -ev!(a),
        Add(a, b) => {
            let (a, b) = both(a, b, x0)?;
            match (a, b) {
                (Some(a), Some(b)) => a + b,
                _ => return Ok(NotExact),
            }
        }
        Sub(a, b) => match both(a, b, x0)? {
            (Some(a), Some(b)) => a - b,
            _ => return Ok(NotExact),
        },
        Mul(a, b) => match both(a, b, x0)? {
            (Some(a), Some(b)) => a * b,
            _ => return Ok(NotExact),
        },
        Div(a, b) => {
            let (a, b) = both(a, b, x0)?;
            match (a, b) {
                (_, Some(b)) if b.is_zero() => return Err(violation(x0)),
                (Some(a), Some(b)) => a / b,
                _ => return Ok(NotExact),
            }
        }
        Pow(a, n) => {
            let a = ev!(a);
            if *n < 0 && a.is_zero() {
                return Err(violation(x0));
            }
            rational_pow(&a, *n)
        }
        Root(n, a) => {
            let a = ev!(a);
            if n % 2 == 0 && a.is_negative() {
                return Err(violation(x0));
            }
            match rational_root(&a, *n) {
                Some(r) => r,
                None => return Ok(NotExact),
            }
        }
        Exp(a) => {
            let a = ev!(a);
            if a.is_zero() {
                Rational::one()
            } else {
                return Ok(NotExact);
            }
        }
        Ln(a) => {
            let a = ev!(a);
            if !a.is_positive() {
                return Err(violation(x0));
            }
            if a.is_one() {
                Rational::zero()
            } else {
                return Ok(NotExact);
            }
        }
        Sin(a) => {
            let a = ev!(a);
            if a.is_zero() {
                a
            } else {
                return Ok(NotExact);
            }
        }
        Cos(a) => {
            let a = ev!(a);
            if a.is_zero() {
                Rational::one()
            } else {
                return Ok(NotExact);
            }
        }
        W(branch, a) => {
            let a = ev!(a);
            let below_branch_point =
                crate::special::cmp_branch_point(&a) == std::cmp::Ordering::Less;
            match branch {
                Branch::Principal => {
                    if below_branch_point {
                        return Err(violation(x0));
                    }
                    if a.is_zero() {
                        a
                    } else {
                        return Ok(NotExact);
                    }
                }
                Branch::Lower => {
                    if below_branch_point || !a.is_negative() {
                        return Err(violation(x0));
                    }
                    return Ok(NotExact);
                }
            }
        }
    };
    Ok(Value(v))
}

/// Evaluates both operands so that a domain violation in either is
/// reported even when the other is not exact.
fn both(
    a: &Expr,
    b: &Expr,
    x0: &Rational,
) -> Result<(Option<Rational>, Option<Rational>), ExprError> {
    let a = eval_exact(a, x0)?;
    let b = eval_exact(b, x0)?;
    let unwrap = |v: ExactEval| match v {
        ExactEval::Value(v) => Some(v),
        ExactEval::NotExact => None,
    };
    Ok((unwrap(a), unwrap(b)))
}
