use num_traits::{Signed, Zero};

use super::{Rule, SideCondition, SolutionRelation, Step};
use crate::expr::{ExactEval, Equation, Expr, Rational};
use crate::interval::{certified_sign, DyadicInterval, Sign};

const POINT_PRECISION: u32 = 256;

/// Sign of `e` at the rational point `x`, exact when possible, otherwise
/// from an enclosure. `None` if undefined there or undecided.
pub fn sign_at(e: &Expr, x: &Rational) -> Option<i32> {
    match e.evaluate_exact(x) {
        Ok(ExactEval::Value(v)) => Some(if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }),
        Ok(ExactEval::NotExact) => {
            match certified_sign(e, &DyadicInterval::from_rational(x, POINT_PRECISION), POINT_PRECISION) {
                Sign::Positive => Some(1),
                Sign::Negative => Some(-1),
                Sign::ContainsZero | Sign::Unknown => None,
            }
        }
        Err(_) => None,
    }
}

/// Whether the condition holds at `x`; `None` if undecided.
pub fn condition_at(c: &SideCondition, x: &Rational) -> Option<bool> {
    sign_at(&c.expr, x).map(|s| c.pred.holds_for_sign(s))
}

/// Whether `x` lies in the domain of `eq`. Natural-domain conditions are
/// tested directly so that irrational boundaries are handled exactly.
pub fn in_domain(eq: &Equation, x: &Rational) -> Option<bool> {
    if !eq.declared_domain().contains(x) {
        return Some(false);
    }
    if !eq.is_domain_approximate() {
        return Some(eq.domain.contains(x));
    }
    for c in eq.domain_conditions() {
        if !condition_at(&c, x)? {
            return Some(false);
        }
    }
    Some(true)
}

/// Whether `x` solves `eq`; `None` if undecided at 256 bits.
pub fn holds_at(eq: &Equation, x: &Rational) -> Option<bool> {
    if !in_domain(eq, x)? {
        return Some(false);
    }
    sign_at(&eq.difference(), x).map(|s| s == 0)
}

/// A grid point contradicting the relation claimed by `step`, if any.
///
/// Points where membership cannot be decided are skipped. For a
/// substitution `y = x^k` the output is tested at `x^k`.
pub fn grid_violation(step: &Step, grid: &[Rational]) -> Option<Rational> {
    for x in grid {
        let Some(before) = holds_at(&step.input, x) else { continue };
        let y = match step.rule {
            Rule::Substitute(k) => num_traits::pow(x.clone(), k as usize),
            _ => x.clone(),
        };
        let Some(after) = holds_at(&step.output, &y) else { continue };
        let conditions = || -> Option<bool> {
            let mut all = true;
            for c in &step.side_conditions {
                all &= condition_at(c, x)?;
            }
            Some(all)
        };
        let bad = match step.relation {
            SolutionRelation::Equivalent => before != after,
            SolutionRelation::Superset => (before && !after) || (after && !before && conditions() == Some(true)),
            SolutionRelation::Subset => after && !before,
            SolutionRelation::Unknown => false,
        };
        if bad {
            return Some(x.clone());
        }
    }
    None
}
