use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{PolyError, UniPoly};
use crate::expr::{Domain, Endpoint, Predicate, RealInterval, Rational};
use crate::interval::{Dyadic, DyadicInterval};

/// `p, p', -rem(p, p'), ...` until the last nonzero remainder.
pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        // positive rescaling keeps signs and shrinks coefficients
        let ints = r.neg().integer_coeffs();
        let scaled = UniPoly::from_bigints(&ints);
        let fixed = if r.neg().leading().is_positive() == scaled.leading().is_positive() {
            scaled
        } else {
            scaled.neg()
        };
        seq.push(fixed);
    }
    seq
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sign variations of the sequence at `x`; `None` stands for ±∞ as given
/// by `positive_infinity`.
pub fn sign_variations(seq: &[UniPoly], x: Option<&Rational>, positive_infinity: bool) -> usize {
    match x {
        Some(x) => variations(seq.iter().map(|q| q.sign_at(x))),
        None => variations(seq.iter().map(|q| q.sign_at_infinity(positive_infinity))),
    }
}

/// Number of distinct real roots in `(a, b]` (ends may be infinite).
pub fn count_roots(p: &UniPoly, a: Option<&Rational>, b: Option<&Rational>) -> usize {
    if p.is_constant() {
        return 0;
    }
    let seq = sturm_sequence(&p.square_free());
    let va = sign_variations(&seq, a, false);
    let vb = sign_variations(&seq, b, true);
    va.saturating_sub(vb)
}

/// Power of two strictly above every root modulus.
pub fn cauchy_bound(p: &UniPoly) -> Rational {
    let lc = p.leading().abs();
    let mut m = Rational::zero();
    for c in &p.coeffs()[..p.coeffs().len().saturating_sub(1)] {
        let r = c.abs() / &lc;
        if r > m {
            m = r;
        }
    }
    let bound = m + Rational::one();
    let mut b = Rational::one();
    while b <= bound {
        b *= Rational::from_integer(BigInt::from(2));
    }
    b
}

/// A real root of `poly` certified to be the only one in `interval`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedRoot {
    /// Square-free polynomial; changes sign across the root.
    pub poly: UniPoly,
    /// Endpoints are not roots, except for a point interval on an exact root.
    pub interval: DyadicInterval,
    /// The root is simple in the polynomial that was isolated.
    pub multiplicity_free: bool,
}

impl IsolatedRoot {
    pub fn lower(&self) -> Rational {
        self.interval.lower_rational().expect("bounded isolating interval")
    }

    pub fn upper(&self) -> Rational {
        self.interval.upper_rational().expect("bounded isolating interval")
    }

    pub fn exact_value(&self) -> Option<Rational> {
        if self.interval.is_point() {
            return Some(self.lower());
        }
        if self.poly.degree() == Some(1) {
            return Some(-self.poly.coeff(0) / self.poly.coeff(1));
        }
        None
    }

    /// One bisection step.
    pub fn bisect(&self) -> IsolatedRoot {
        if self.interval.is_point() {
            return self.clone();
        }
        let p = self.interval.precision();
        let lo = self.interval.lower().unwrap().clone();
        let hi = self.interval.upper().unwrap().clone();
        let mid = lo.add(&hi).shift(-1);
        let s_mid = self.poly.sign_at(&mid.to_rational());
        let s_lo = self.poly.sign_at(&lo.to_rational());
        let interval = if s_mid == 0 {
            DyadicInterval::point(mid, p)
        } else if s_mid == s_lo {
            DyadicInterval::new(Some(mid), Some(hi), p)
        } else {
            DyadicInterval::new(Some(lo), Some(mid), p)
        };
        IsolatedRoot { interval, ..self.clone() }
    }

    /// Bisects until the width is below `2^-bits`.
    pub fn refine_to_bits(&self, bits: i64) -> IsolatedRoot {
        let target = Dyadic::pow2(-bits);
        let mut r = self.clone();
        while r.interval.width().is_some_and(|w| w >= target) {
            r = r.bisect();
        }
        r
    }

    /// Bisects until the width is at most `eps`.
    pub fn refine_to(&self, eps: &Rational) -> IsolatedRoot {
        let mut r = self.clone();
        while r.upper() - r.lower() > *eps {
            r = r.bisect();
        }
        r
    }

    /// Enclosure of width below `2^-precision`, tagged with that precision.
    pub fn enclosure(&self, precision: u32) -> DyadicInterval {
        self.refine_to_bits(precision as i64).interval.with_precision(precision)
    }

    /// Whether the root is also a root of `q`: `gcd(poly, q)` has a root in
    /// the isolating interval.
    pub fn is_root_of(&self, q: &UniPoly) -> bool {
        let g = self.poly.gcd(q);
        if g.is_constant() {
            return false;
        }
        if let Some(v) = self.exact_value() {
            return g.sign_at(&v) == 0;
        }
        g.sign_at(&self.lower()) * g.sign_at(&self.upper()) < 0
            || count_roots(&g, Some(&self.lower()), Some(&self.upper())) > 0
    }
}

fn choose_split(p: &UniPoly, a: &Dyadic, b: &Dyadic) -> Dyadic {
    let width = b.sub(a);
    for j in [8i64, 7, 9, 6, 10, 5, 11, 4, 12, 3, 13] {
        let m = a.add(&width.mul(&Dyadic::from_int(j)).shift(-4));
        if p.sign_at(&m.to_rational()) != 0 {
            return m;
        }
    }
    // at most deg(p) roots, so some finer split point is not a root
    let mut k = 5;
    loop {
        for j in 1..(1i64 << k) {
            let m = a.add(&width.mul(&Dyadic::from_int(j)).shift(-k));
            if p.sign_at(&m.to_rational()) != 0 {
                return m;
            }
        }
        k += 1;
    }
}

/// One isolating interval per distinct real root, in increasing order.
pub fn sturm_isolate(p: &UniPoly) -> Result<Vec<IsolatedRoot>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let sf = p.square_free();
    let seq = sturm_sequence(&sf);
    let repeated = p.gcd(&p.derivative());
    let bound = cauchy_bound(&sf);
    let b = Dyadic::from_rational(&bound, 64, crate::interval::Round::Up);
    let a = b.neg();
    let count_between = |lo: &Dyadic, hi: &Dyadic| {
        let vl = sign_variations(&seq, Some(&lo.to_rational()), false);
        let vh = sign_variations(&seq, Some(&hi.to_rational()), true);
        vl.saturating_sub(vh)
    };
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone(), count_between(&a, &b))];
    while let Some((lo, hi, n)) = stack.pop() {
        match n {
            0 => {}
            1 => {
                let interval = DyadicInterval::new(Some(lo), Some(hi), 64);
                let root = IsolatedRoot { poly: sf.clone(), interval, multiplicity_free: true };
                let simple = repeated.is_constant() || !root.is_root_of(&repeated);
                out.push(IsolatedRoot { multiplicity_free: simple, ..root });
            }
            _ => {
                let m = choose_split(&sf, &lo, &hi);
                let left = count_between(&lo, &m);
                stack.push((m.clone(), hi, n - left));
                stack.push((lo, m, left));
            }
        }
    }
    out.sort_by(|x, y| x.lower().cmp(&y.lower()));
    Ok(out)
}

/// `{x : p(x) ⋈ 0}` with a flag set when irrational roots forced a
/// conservative (strictly smaller) answer.
pub fn sign_set(p: &UniPoly, pred: Predicate) -> (Domain, bool) {
    if p.is_constant() {
        let s = p.sign_at(&Rational::zero());
        let d = if pred.holds_for_sign(s) { Domain::real_line() } else { Domain::empty() };
        return (d, false);
    }
    let rational = super::rational_roots(p).unwrap_or_default();
    let roots = sturm_isolate(p).unwrap_or_default();
    let mut pieces = Vec::new();
    let mut approximate = false;
    // current left end of the open sign-constant stretch
    let mut start = Endpoint::Infinite;
    let sample_sign = |lo: &Endpoint, hi: Option<&Rational>| -> i32 {
        let t = match (lo.value(), hi) {
            (Some(a), Some(b)) => (a + b) / Rational::from_integer(BigInt::from(2)),
            (Some(a), None) => a + Rational::one(),
            (None, Some(b)) => b - Rational::one(),
            (None, None) => Rational::zero(),
        };
        p.sign_at(&t)
    };
    for root in &roots {
        let exact = rational.iter().find(|r| root.interval.contains_rational(r)).cloned();
        match exact {
            Some(r) => {
                if pred.holds_for_sign(sample_sign(&start, Some(&r))) {
                    pieces.push(RealInterval::new(start.clone(), Endpoint::Open(r.clone())));
                }
                if pred.holds_for_sign(0) {
                    pieces.push(RealInterval::point(r.clone()));
                }
                start = Endpoint::Open(r);
            }
            None => {
                let tight = root.refine_to_bits(64);
                let (lo, hi) = (tight.lower(), tight.upper());
                if pred.holds_for_sign(sample_sign(&start, Some(&lo))) {
                    pieces.push(RealInterval::new(start.clone(), Endpoint::Closed(lo)));
                }
                approximate = true;
                start = Endpoint::Closed(hi);
            }
        }
    }
    if pred.holds_for_sign(sample_sign(&start, None)) {
        pieces.push(RealInterval::new(start, Endpoint::Infinite));
    }
    (Domain::normalize(pieces), approximate)
}
