use num_traits::Zero;

use crate::expr::Rational;
use crate::poly::{count_roots, sturm_isolate, IsolatedRoot, UniPoly};

/// Integer polynomials of degree ≥ 1 with positive leading coefficient, by
/// height `deg + Σ|c|` ascending, then degree ascending, then coefficient
/// tuples (leading first) in descending lexicographic order.
#[derive(Debug, Clone)]
pub struct PolynomialsByHeight {
    height: u64,
    queue: std::collections::VecDeque<Vec<i64>>,
}

impl PolynomialsByHeight {
    pub fn new() -> Self {
        PolynomialsByHeight { height: 1, queue: Default::default() }
    }

    fn fill(&mut self) {
        while self.queue.is_empty() {
            self.height += 1;
            let h = self.height as i64;
            for deg in 1..h {
                let budget = h - deg;
                let mut out = Vec::new();
                tuples(deg as usize + 1, budget, true, &mut Vec::new(), &mut out);
                self.queue.extend(out);
            }
        }
    }
}

impl Default for PolynomialsByHeight {
    fn default() -> Self {
        Self::new()
    }
}

/// Tuples of `len` integers with absolute sum exactly `budget`, first entry
/// positive when `lead`, in descending lexicographic order.
fn tuples(len: usize, budget: i64, lead: bool, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    let lo = if lead { 1 } else { -budget };
    if len == 1 {
        let last: &[i64] = if budget == 0 { &[0] } else { &[budget, -budget] };
        for &v in last.iter().filter(|&&v| v >= lo) {
            prefix.push(v);
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    let mut v = budget;
    while v >= lo {
        prefix.push(v);
        tuples(len - 1, budget - v.abs(), false, prefix, out);
        prefix.pop();
        v -= 1;
    }
}

impl Iterator for PolynomialsByHeight {
    /// Coefficients from the leading one down.
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        self.fill();
        self.queue.pop_front()
    }
}

/// Whether two isolated roots denote the same real number: the gcd of their
/// polynomials has a root in the intersection of the isolating intervals.
pub fn same_number(r: &IsolatedRoot, s: &IsolatedRoot) -> bool {
    match (r.exact_value(), s.exact_value()) {
        (Some(a), Some(b)) => return a == b,
        (Some(a), None) => return in_open(s, &a) && s.poly.eval(&a).is_zero(),
        (None, Some(b)) => return in_open(r, &b) && r.poly.eval(&b).is_zero(),
        (None, None) => {}
    }
    let lo = r.lower().max(s.lower());
    let hi = r.upper().min(s.upper());
    if lo >= hi {
        return false;
    }
    let g = r.poly.gcd(&s.poly);
    if g.is_constant() {
        return false;
    }
    let upper_root = usize::from(g.eval(&hi).is_zero());
    count_roots(&g, Some(&lo), Some(&hi)) > upper_root
}

fn in_open(r: &IsolatedRoot, t: &Rational) -> bool {
    r.lower() < *t && *t < r.upper()
}

/// Enumerates distinct real algebraic numbers in discovery order.
#[derive(Debug, Clone, Default)]
pub struct AlgebraicNumbers {
    polys: PolynomialsByHeight,
    pending: std::collections::VecDeque<(UniPoly, IsolatedRoot)>,
    found: Vec<IsolatedRoot>,
}

impl AlgebraicNumbers {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Iterator for AlgebraicNumbers {
    type Item = (UniPoly, IsolatedRoot);

    fn next(&mut self) -> Option<Self::Item> {
        while self.pending.is_empty() {
            let mut coeffs = self.polys.next()?;
            coeffs.reverse();
            let p = UniPoly::from_ints(&coeffs);
            for root in sturm_isolate(&p).ok()? {
                if self.found.iter().any(|f| same_number(f, &root)) {
                    continue;
                }
                self.found.push(root.clone());
                self.pending.push_back((p.clone(), root));
            }
        }
        self.pending.pop_front()
    }
}

/// The first `count` real algebraic numbers with their defining polynomials.
pub fn enumerate_algebraic(count: usize) -> Vec<(UniPoly, IsolatedRoot)> {
    AlgebraicNumbers::new().take(count).collect()
}
