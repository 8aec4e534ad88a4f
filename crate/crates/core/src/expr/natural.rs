use std::fmt;

use super::{Branch, Domain, Expr, RealInterval, StructuralSign};
use crate::interval::{self, DyadicInterval, Sign};
use crate::poly::{self, RationalFunction};

/// Sign predicate `expr ⋈ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Predicate {
    Ge0,
    Gt0,
    Ne0,
    Le0,
    Lt0,
}

impl Predicate {
    pub fn symbol(self) -> &'static str {
        match self {
            Predicate::Ge0 => ">=",
            Predicate::Gt0 => ">",
            Predicate::Ne0 => "!=",
            Predicate::Le0 => "<=",
            Predicate::Lt0 => "<",
        }
    }

    /// Whether a value with the given sign satisfies the predicate.
    /// `sign` is -1, 0 or 1.
    pub fn holds_for_sign(self, sign: i32) -> bool {
        match self {
            Predicate::Ge0 => sign >= 0,
            Predicate::Gt0 => sign > 0,
            Predicate::Ne0 => sign != 0,
            Predicate::Le0 => sign <= 0,
            Predicate::Lt0 => sign < 0,
        }
    }

    pub fn is_strict(self) -> bool {
        !matches!(self, Predicate::Ge0 | Predicate::Le0)
    }

    fn implied_by(self, s: StructuralSign) -> bool {
        use StructuralSign::*;
        match self {
            Predicate::Ge0 => s.is_nonnegative(),
            Predicate::Gt0 => s == Positive,
            Predicate::Ne0 => matches!(s, Positive | Negative),
            Predicate::Le0 => s.is_nonpositive(),
            Predicate::Lt0 => s == Negative,
        }
    }

    fn refuted_by(self, s: StructuralSign) -> bool {
        use StructuralSign::*;
        match self {
            Predicate::Ge0 => s == Negative,
            Predicate::Gt0 => s.is_nonpositive(),
            Predicate::Ne0 => s == Zero,
            Predicate::Le0 => s == Positive,
            Predicate::Lt0 => s.is_nonnegative(),
        }
    }
}

/// A constraint `expr ⋈ 0` that a point must satisfy to lie in a natural
/// domain or to keep a rewriting step reversible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DomainCondition {
    pub expr: Expr,
    pub pred: Predicate,
}

impl DomainCondition {
    pub fn new(expr: Expr, pred: Predicate) -> Self {
        DomainCondition { expr, pred }
    }
}

impl fmt::Display for DomainCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} 0", self.expr, self.pred.symbol())
    }
}

/// Natural domain of an expression. When some constraint boundary is not a
/// rational number the domain is a conservative subset and `approximate`
/// is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalDomain {
    pub domain: Domain,
    pub approximate: bool,
}

impl Expr {
    /// Every constraint a point must satisfy for all subterms to be real.
    pub fn domain_conditions(&self) -> Vec<DomainCondition> {
        let mut out = Vec::new();
        collect_conditions(self, &mut out);
        out.dedup();
        out
    }

    pub fn natural_domain(&self) -> NaturalDomain {
        let mut domain = Domain::real_line();
        let mut approximate = false;
        for cond in self.domain_conditions() {
            if domain.is_empty() {
                break;
            }
            let (d, approx) = preimage(&cond.expr, cond.pred);
            approximate |= approx;
            domain = domain.intersect(&d);
        }
        NaturalDomain { domain, approximate }
    }
}

fn inv_e() -> Expr {
    Expr::int(-1).exp()
}

fn collect_conditions(e: &Expr, out: &mut Vec<DomainCondition>) {
    for c in e.children() {
        collect_conditions(c, out);
    }
    let push = |out: &mut Vec<DomainCondition>, expr: Expr, pred| {
        let c = DomainCondition::new(expr, pred);
        if !out.contains(&c) {
            out.push(c);
        }
    };
    match e {
        Expr::Root(n, a) if n % 2 == 0 => push(out, (**a).clone(), Predicate::Ge0),
        Expr::Ln(a) => push(out, (**a).clone(), Predicate::Gt0),
        Expr::Div(_, b) => push(out, (**b).clone(), Predicate::Ne0),
        Expr::Pow(a, n) if *n < 0 => push(out, (**a).clone(), Predicate::Ne0),
        Expr::W(branch, a) => {
            push(out, (**a).clone() + inv_e(), Predicate::Ge0);
            if *branch == Branch::Lower {
                push(out, (**a).clone(), Predicate::Lt0);
            }
        }
        _ => {}
    }
}

/// `{x : expr(x) ⋈ 0}`, exact when possible.
pub(crate) fn preimage(expr: &Expr, pred: Predicate) -> (Domain, bool) {
    let s = expr.structural_sign();
    if pred.implied_by(s) {
        return (Domain::real_line(), false);
    }
    if pred.refuted_by(s) {
        return (Domain::empty(), false);
    }
    if let Some(rf) = RationalFunction::from_expr(expr) {
        let numer_times_denom = rf.numer.mul(&rf.denom);
        return poly::sign_set(&numer_times_denom, pred);
    }
    if expr.is_constant() {
        return constant_preimage(expr, pred);
    }
    if let Some(result) = shifted_rational_preimage(expr, pred) {
        return result;
    }
    (interval_region(expr, pred), true)
}

fn constant_preimage(expr: &Expr, pred: Predicate) -> (Domain, bool) {
    let point = DyadicInterval::point_int(0);
    match interval::certified_sign(expr, &point, 1024) {
        Sign::Positive => (holds(pred, 1), false),
        Sign::Negative => (holds(pred, -1), false),
        Sign::ContainsZero => (holds(pred, 0), false),
        Sign::Unknown => (Domain::empty(), true),
    }
}

fn holds(pred: Predicate, sign: i32) -> Domain {
    if pred.holds_for_sign(sign) {
        Domain::real_line()
    } else {
        Domain::empty()
    }
}

/// `u + c ⋈ 0` with `u` a rational function and `c` an irrational constant:
/// replace `c` by a rational bound on the safe side.
fn shifted_rational_preimage(expr: &Expr, pred: Predicate) -> Option<(Domain, bool)> {
    let (u, c) = match expr {
        Expr::Add(a, b) if b.is_constant() => (a.as_ref(), b.as_ref()),
        Expr::Add(a, b) if a.is_constant() => (b.as_ref(), a.as_ref()),
        _ => return None,
    };
    let rf = RationalFunction::from_expr(u)?;
    let enc = interval::eval_interval(c, &DyadicInterval::point_int(0), 128).ok()?;
    let (lo, hi) = (enc.lower_rational()?, enc.upper_rational()?);
    let shifted = |bound: &crate::expr::Rational| {
        let numer = rf.numer.add(&rf.denom.scale(bound));
        numer.mul(&rf.denom)
    };
    let domain = match pred {
        Predicate::Ge0 | Predicate::Gt0 => poly::sign_set(&shifted(&lo), pred).0,
        Predicate::Le0 | Predicate::Lt0 => poly::sign_set(&shifted(&hi), pred).0,
        Predicate::Ne0 => poly::sign_set(&shifted(&lo), Predicate::Gt0)
            .0
            .union(&poly::sign_set(&shifted(&hi), Predicate::Lt0).0),
    };
    Some((domain, true))
}

/// Union of pieces of the line on which interval evaluation certifies the
/// predicate. Always a subset of the true preimage.
fn interval_region(expr: &Expr, pred: Predicate) -> Domain {
    const SPAN: i64 = 1 << 12;
    const PIECES: i64 = 64;
    const DEPTH: u32 = 6;
    let mut accepted: Vec<RealInterval> = Vec::new();
    let big = crate::expr::int(SPAN);
    let halflines = [
        RealInterval::to_upper(-big.clone(), true),
        RealInterval::from_lower(big.clone(), true),
    ];
    for h in halflines {
        if certifies(expr, pred, &h) {
            accepted.push(h);
        }
    }
    let step = crate::expr::ratio(2 * SPAN, PIECES);
    let mut stack: Vec<(RealInterval, u32)> = (0..PIECES)
        .map(|k| {
            let a = -big.clone() + step.clone() * crate::expr::int(k);
            (RealInterval::closed(a.clone(), a + step.clone()), 0)
        })
        .collect();
    while let Some((iv, depth)) = stack.pop() {
        if certifies(expr, pred, &iv) {
            accepted.push(iv);
        } else if depth < DEPTH {
            let mid = iv.sample_point();
            let (a, b) = (iv.lower.value().unwrap().clone(), iv.upper.value().unwrap().clone());
            stack.push((RealInterval::closed(a, mid.clone()), depth + 1));
            stack.push((RealInterval::closed(mid, b), depth + 1));
        }
    }
    Domain::normalize(accepted)
}

fn certifies(expr: &Expr, pred: Predicate, iv: &RealInterval) -> bool {
    let x = DyadicInterval::enclose_real_interval(iv, 64);
    match interval::eval_interval(expr, &x, 64) {
        Ok(v) => match pred {
            Predicate::Ge0 => v.is_nonnegative(),
            Predicate::Gt0 => v.is_positive(),
            Predicate::Le0 => v.is_nonpositive(),
            Predicate::Lt0 => v.is_negative(),
            Predicate::Ne0 => v.is_positive() || v.is_negative(),
        },
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{int, ratio};
    use crate::parse::parse_expression;

    fn nd(s: &str) -> NaturalDomain {
        parse_expression(s).unwrap().natural_domain()
    }

    fn half_line(a: i64, closed: bool) -> Domain {
        Domain::from_interval(RealInterval::from_lower(int(a), closed))
    }

    #[test]
    fn even_root_constraint() {
        let d = nd("sqrt(x)");
        assert_eq!(d.domain, half_line(0, true));
        assert!(!d.approximate);
    }

    #[test]
    fn sum_of_roots_intersects_constraints() {
        assert_eq!(nd("sqrt(x) + sqrt(2*x + 1)").domain, half_line(0, true));
        let d = nd("sqrt(2*x + 1)").domain;
        assert_eq!(
            d,
            Domain::from_interval(RealInterval::from_lower(ratio(-1, 2), true))
        );
    }

    #[test]
    fn logarithm_constraint() {
        assert_eq!(nd("ln(x)").domain, half_line(0, false));
    }

    #[test]
    fn division_removes_zeros() {
        let d = nd("1/(x^2 - 1)").domain;
        assert!(!d.contains(&int(1)) && !d.contains(&int(-1)));
        assert!(d.contains(&int(0)) && d.contains(&int(5)));
    }

    #[test]
    fn irrational_boundary_is_approximate_subset() {
        let d = nd("sqrt(x^2 - 2)");
        assert!(d.approximate);
        assert!(d.domain.contains(&int(2)));
        assert!(!d.domain.contains(&int(1)));
        assert!(!d.domain.contains(&ratio(141, 100)));
    }

    #[test]
    fn exp_arguments_are_positive_structurally() {
        let d = nd("ln(exp(x)) + sqrt(exp(x))");
        assert!(d.domain.is_real_line());
    }

    #[test]
    fn lambert_domains() {
        let d0 = nd("W(0, x)");
        assert!(d0.approximate);
        assert!(d0.domain.contains(&ratio(-36, 100)));
        assert!(!d0.domain.contains(&ratio(-37, 100)));
        let dm = nd("W(-1, x)");
        assert!(dm.domain.contains(&ratio(-1, 10)));
        assert!(!dm.domain.contains(&int(0)));
    }

    #[test]
    fn odd_root_has_full_domain() {
        assert!(nd("root(3, x - 5)").domain.is_real_line());
    }
}
