use crate::expr::{Domain, Expr, RealInterval, StructuralSign};
use crate::interval::{eval_interval, DyadicInterval};

const MAX_DEPTH: u32 = 12;
const BUDGET: usize = 600;

fn join(a: StructuralSign, b: StructuralSign) -> StructuralSign {
    use StructuralSign::*;
    if a == b {
        return a;
    }
    if a.is_nonnegative() && b.is_nonnegative() {
        NonNegative
    } else if a.is_nonpositive() && b.is_nonpositive() {
        NonPositive
    } else {
        Unknown
    }
}

fn classify(v: &DyadicInterval) -> StructuralSign {
    use StructuralSign::*;
    if v.is_positive() {
        Positive
    } else if v.is_negative() {
        Negative
    } else if v.is_nonnegative() && v.is_nonpositive() {
        Zero
    } else if v.is_nonnegative() {
        NonNegative
    } else if v.is_nonpositive() {
        NonPositive
    } else {
        Unknown
    }
}

fn piece(e: &Expr, x: &DyadicInterval, depth: u32, budget: &mut usize) -> StructuralSign {
    if *budget == 0 {
        return StructuralSign::Unknown;
    }
    *budget -= 1;
    let s = eval_interval(e, x, 64).map(|v| classify(&v)).unwrap_or(StructuralSign::Unknown);
    let decided = matches!(s, StructuralSign::Positive | StructuralSign::Negative | StructuralSign::Zero);
    if decided || depth >= MAX_DEPTH {
        return s;
    }
    match x.bisect() {
        Some((l, r)) => {
            let a = piece(e, &l, depth + 1, budget);
            if a == StructuralSign::Unknown {
                return a;
            }
            join(a, piece(e, &r, depth + 1, budget))
        }
        None => s,
    }
}

fn on_interval(e: &Expr, iv: &RealInterval, budget: &mut usize) -> StructuralSign {
    let x = DyadicInterval::enclose_real_interval(iv, 64);
    if !x.is_bounded() {
        let s = eval_interval(e, &x, 64).map(|v| classify(&v)).unwrap_or(StructuralSign::Unknown);
        return s;
    }
    piece(e, &x, 0, budget)
}

/// Sign of `e` over `domain`: structural rules first, then interval
/// evaluation on an adaptive subdivision (depth at most 12).
pub fn sign_on(e: &Expr, domain: &Domain) -> StructuralSign {
    let s = e.structural_sign();
    if s != StructuralSign::Unknown {
        return s;
    }
    let mut budget = BUDGET;
    let mut acc: Option<StructuralSign> = None;
    for iv in domain.intervals() {
        let s = on_interval(e, iv, &mut budget);
        acc = Some(match acc {
            None => s,
            Some(a) => join(a, s),
        });
        if acc == Some(StructuralSign::Unknown) {
            break;
        }
    }
    acc.unwrap_or(StructuralSign::Unknown)
}
