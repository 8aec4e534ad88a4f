use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::expr::{Expr, Rational};
use crate::poly::{resultant_by_evaluation, BiPoly, RationalFunction};

type ZPoly = Vec<BigInt>;

fn ipow(b: &BigInt, e: u32) -> BigInt {
    num_traits::pow(b.clone(), e as usize)
}

/// Coefficients in `y` of `P(x0, y)`, padded to `deg_y(P) + 1`.
fn y_coeffs_at(p: &BiPoly, x0: &BigInt) -> ZPoly {
    let mut v = vec![BigInt::zero(); p.degree_y() as usize + 1];
    for (&(i, j), c) in p.terms() {
        v[j as usize] += c * ipow(x0, i);
    }
    v
}

/// `q(c + s·z)` as coefficients in `z`.
fn shift_compose(q: &[BigInt], c: &BigInt, s: &BigInt) -> ZPoly {
    let mut out: ZPoly = vec![BigInt::zero(); q.len()];
    for coeff in q.iter().rev() {
        let mut next = vec![BigInt::zero(); q.len()];
        for (k, a) in out.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            next[k] += a * c;
            if k + 1 < next.len() {
                next[k + 1] += a * s;
            }
        }
        next[0] += coeff;
        out = next;
    }
    out
}

/// `Res_z(A(x, z), B(x, y, z))` where `A` is an annihilator of the
/// eliminated subterm and `b_at` gives the `z`-coefficients of `B` at an
/// integer point. `bx`, `by` bound the degrees of `B` in `x` and `y`.
fn eliminate(a: &BiPoly, b_at: &dyn Fn(&BigInt, &BigInt) -> ZPoly, bz: u32, bx: u32, by: u32) -> Option<BiPoly> {
    let m = a.degree_y();
    let dx = bz * a.degree_x() + m * bx;
    let dy = m * by;
    let a_at = |x0: &BigInt, _: &BigInt| y_coeffs_at(a, x0);
    let r = resultant_by_evaluation(&a_at, b_at, dx, dy);
    if r.is_zero() || r.degree_y() == 0 {
        None
    } else {
        Some(r.normalized())
    }
}

fn sum(pa: &BiPoly, pb: &BiPoly) -> Option<BiPoly> {
    let b_at = |x0: &BigInt, y0: &BigInt| shift_compose(&y_coeffs_at(pb, x0), y0, &-BigInt::one());
    eliminate(pa, &b_at, pb.degree_y(), pb.degree_x(), pb.degree_y())
}

fn product(pa: &BiPoly, pb: &BiPoly) -> Option<BiPoly> {
    let db = pb.degree_y();
    let b_at = |x0: &BigInt, y0: &BigInt| {
        let q = y_coeffs_at(pb, x0);
        let mut v = vec![BigInt::zero(); db as usize + 1];
        for (j, c) in q.iter().enumerate() {
            v[db as usize - j] = c * ipow(y0, j as u32);
        }
        v
    };
    eliminate(pa, &b_at, db, pb.degree_x(), db)
}

fn quotient(pa: &BiPoly, pb: &BiPoly) -> Option<BiPoly> {
    let da = pa.degree_y();
    let b_at = |x0: &BigInt, y0: &BigInt| {
        y_coeffs_at(pa, x0).iter().enumerate().map(|(j, c)| c * ipow(y0, j as u32)).collect()
    };
    eliminate(pb, &b_at, da, pa.degree_x(), da)
}

fn power(pa: &BiPoly, n: i64) -> Option<BiPoly> {
    let k = u32::try_from(n.unsigned_abs()).ok()?;
    if k == 0 {
        return Some(BiPoly::from_ints(&[(0, 1, 1), (0, 0, -1)]));
    }
    let b_at = move |_: &BigInt, y0: &BigInt| {
        let mut v = vec![BigInt::zero(); k as usize + 1];
        if n > 0 {
            v[0] = y0.clone();
            v[k as usize] = -BigInt::one();
        } else {
            v[0] = -BigInt::one();
            v[k as usize] = y0.clone();
        }
        v
    };
    eliminate(pa, &b_at, k, 0, 1)
}

fn literal(r: &Rational) -> BiPoly {
    BiPoly::from_terms([((0, 1), r.denom().clone()), ((0, 0), -r.numer().clone())]).normalized()
}

/// Constructs a nonzero annihilator for `e` when it lies in the algebraic
/// fragment (rationals, `x`, field operations, integer powers, real roots).
pub fn construct(e: &Expr) -> Option<BiPoly> {
    if let Some(rf) = RationalFunction::from_expr(e) {
        return Some(BiPoly::graph_of(&rf.numer, &rf.denom));
    }
    match e {
        Expr::Lit(r) => Some(literal(r)),
        Expr::Var => Some(BiPoly::from_ints(&[(0, 1, 1), (1, 0, -1)])),
        Expr::Neg(a) => Some(construct(a)?.negate_y().normalized()),
        Expr::Add(a, b) => sum(&construct(a)?, &construct(b)?),
        Expr::Sub(a, b) => sum(&construct(a)?, &construct(b)?.negate_y()),
        Expr::Mul(a, b) => product(&construct(a)?, &construct(b)?),
        Expr::Div(a, b) => quotient(&construct(a)?, &construct(b)?),
        Expr::Pow(a, n) => power(&construct(a)?, *n),
        Expr::Root(n, a) => Some(construct(a)?.compose_y_power(*n).normalized()),
        _ => None,
    }
}
