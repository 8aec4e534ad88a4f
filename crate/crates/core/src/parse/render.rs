use num_traits::Signed;

use crate::expr::{Branch, Expr, Rational};

const ADD: u8 = 1;
const MUL: u8 = 2;
const NEG: u8 = 3;
const POW: u8 = 4;
const ATOM: u8 = 5;

/// Renders an expression in the input grammar. `parse_expression` of the
/// result is structurally equal to every expression the parser produces.
pub fn render_expr(e: &Expr) -> String {
    render(e, "x").0
}

/// Same as [`render_expr`] with the variable printed as `var`.
pub fn render_expr_in(e: &Expr, var: &str) -> String {
    render(e, var).0
}

/// `3`, `-3`, `1/2` or `-1/2`.
pub fn render_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn lit_prec(r: &Rational) -> u8 {
    match (r.is_integer(), r.is_negative()) {
        (true, false) => ATOM,
        (true, true) => NEG,
        (false, _) => MUL,
    }
}

fn is_negative_leading(e: &Expr) -> bool {
    match e {
        Expr::Neg(_) => true,
        Expr::Lit(r) => r.is_negative(),
        _ => false,
    }
}

fn paren_if(s: (String, u8), needs: bool) -> String {
    if needs {
        format!("({})", s.0)
    } else {
        s.0
    }
}

fn call(name: &str, arg: &Expr, v: &str) -> (String, u8) {
    (format!("{name}({})", render(arg, v).0), ATOM)
}

fn render(e: &Expr, v: &str) -> (String, u8) {
    match e {
        Expr::Lit(r) => (render_rational(r), lit_prec(r)),
        Expr::Var => (v.into(), ATOM),
        Expr::E => ("e".into(), ATOM),
        Expr::Pi => ("pi".into(), ATOM),
        Expr::Neg(a) => {
            let inner = render(a, v);
            let needs = inner.1 < NEG || is_negative_leading(a);
            (format!("-{}", paren_if(inner, needs)), NEG)
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let op = if matches!(e, Expr::Add(..)) { "+" } else { "-" };
            let l = render(a, v);
            let r = render(b, v);
            let needs_r = r.1 <= ADD || is_negative_leading(b);
            (format!("{} {op} {}", l.0, paren_if(r, needs_r)), ADD)
        }
        Expr::Mul(a, b) | Expr::Div(a, b) => {
            let op = if matches!(e, Expr::Mul(..)) { "*" } else { "/" };
            let l = render(a, v);
            let r = render(b, v);
            let needs_l = l.1 < MUL;
            let needs_r = r.1 <= MUL || is_negative_leading(b);
            (format!("{}{op}{}", paren_if(l, needs_l), paren_if(r, needs_r)), MUL)
        }
        Expr::Pow(a, n) => {
            let base = render(a, v);
            let needs = base.1 < ATOM || is_negative_leading(a);
            (format!("{}^{n}", paren_if(base, needs)), POW)
        }
        Expr::Root(2, a) => call("sqrt", a, v),
        Expr::Root(n, a) => (format!("root({n}, {})", render(a, v).0), ATOM),
        Expr::Exp(a) => call("exp", a, v),
        Expr::Ln(a) => call("ln", a, v),
        Expr::Sin(a) => call("sin", a, v),
        Expr::Cos(a) => call("cos", a, v),
        Expr::W(k, a) => {
            let idx = match k {
                Branch::Principal => 0,
                Branch::Lower => -1,
            };
            (format!("W({idx}, {})", render(a, v).0), ATOM)
        }
    }
}
