use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use super::Rational;

/// One end of a real interval. Infinite ends are always open.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Endpoint {
    Infinite,
    Open(Rational),
    Closed(Rational),
}

impl Endpoint {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Endpoint::Infinite => None,
            Endpoint::Open(v) | Endpoint::Closed(v) => Some(v),
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Endpoint::Closed(_))
    }
}

/// A nonempty interval of the real line with exact endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealInterval {
    pub lower: Endpoint,
    pub upper: Endpoint,
}

impl RealInterval {
    pub fn new(lower: Endpoint, upper: Endpoint) -> Self {
        RealInterval { lower, upper }
    }

    pub fn real_line() -> Self {
        RealInterval::new(Endpoint::Infinite, Endpoint::Infinite)
    }

    pub fn closed(a: Rational, b: Rational) -> Self {
        RealInterval::new(Endpoint::Closed(a), Endpoint::Closed(b))
    }

    pub fn open(a: Rational, b: Rational) -> Self {
        RealInterval::new(Endpoint::Open(a), Endpoint::Open(b))
    }

    pub fn point(a: Rational) -> Self {
        RealInterval::closed(a.clone(), a)
    }

    /// `[a, ∞)` or `(a, ∞)`.
    pub fn from_lower(a: Rational, closed: bool) -> Self {
        let lower = if closed { Endpoint::Closed(a) } else { Endpoint::Open(a) };
        RealInterval::new(lower, Endpoint::Infinite)
    }

    /// `(-∞, b]` or `(-∞, b)`.
    pub fn to_upper(b: Rational, closed: bool) -> Self {
        let upper = if closed { Endpoint::Closed(b) } else { Endpoint::Open(b) };
        RealInterval::new(Endpoint::Infinite, upper)
    }

    pub fn is_empty(&self) -> bool {
        match (self.lower.value(), self.upper.value()) {
            (Some(a), Some(b)) => match a.cmp(b) {
                Ordering::Greater => true,
                Ordering::Equal => !(self.lower.is_closed() && self.upper.is_closed()),
                Ordering::Less => false,
            },
            _ => false,
        }
    }

    pub fn contains(&self, t: &Rational) -> bool {
        let above = match &self.lower {
            Endpoint::Infinite => true,
            Endpoint::Open(a) => t > a,
            Endpoint::Closed(a) => t >= a,
        };
        let below = match &self.upper {
            Endpoint::Infinite => true,
            Endpoint::Open(b) => t < b,
            Endpoint::Closed(b) => t <= b,
        };
        above && below
    }

    pub fn is_bounded(&self) -> bool {
        self.lower.value().is_some() && self.upper.value().is_some()
    }

    pub fn intersect(&self, other: &RealInterval) -> RealInterval {
        let lower = match cmp_lower(&self.lower, &other.lower) {
            Ordering::Less => other.lower.clone(),
            _ => self.lower.clone(),
        };
        let upper = match cmp_upper(&self.upper, &other.upper) {
            Ordering::Greater => other.upper.clone(),
            _ => self.upper.clone(),
        };
        RealInterval { lower, upper }
    }

    /// A rational point strictly inside the interval (or the point itself
    /// for a degenerate closed interval).
    pub fn sample_point(&self) -> Rational {
        let one = Rational::from_integer(1.into());
        match (self.lower.value(), self.upper.value()) {
            (Some(a), Some(b)) => (a + b) / Rational::from_integer(2.into()),
            (Some(a), None) => a + one,
            (None, Some(b)) => b - one,
            (None, None) => Rational::zero(),
        }
    }
}

/// Orders lower endpoints by the set they start: `(-∞` first, and `[a`
/// before `(a`.
fn cmp_lower(a: &Endpoint, b: &Endpoint) -> Ordering {
    match (a, b) {
        (Endpoint::Infinite, Endpoint::Infinite) => Ordering::Equal,
        (Endpoint::Infinite, _) => Ordering::Less,
        (_, Endpoint::Infinite) => Ordering::Greater,
        _ => {
            let (va, vb) = (a.value().unwrap(), b.value().unwrap());
            va.cmp(vb)
                .then_with(|| b.is_closed().cmp(&a.is_closed()))
        }
    }
}

/// Orders upper endpoints: `b)` before `b]`, and `∞)` last.
fn cmp_upper(a: &Endpoint, b: &Endpoint) -> Ordering {
    match (a, b) {
        (Endpoint::Infinite, Endpoint::Infinite) => Ordering::Equal,
        (Endpoint::Infinite, _) => Ordering::Greater,
        (_, Endpoint::Infinite) => Ordering::Less,
        _ => {
            let (va, vb) = (a.value().unwrap(), b.value().unwrap());
            va.cmp(vb).then_with(|| a.is_closed().cmp(&b.is_closed()))
        }
    }
}

/// Whether an interval ending at `upper` touches or overlaps one starting
/// at `lower`, so that their union is a single interval.
fn joins(upper: &Endpoint, lower: &Endpoint) -> bool {
    match (upper.value(), lower.value()) {
        (None, _) | (_, None) => true,
        (Some(u), Some(l)) => match u.cmp(l) {
            Ordering::Greater => true,
            Ordering::Equal => upper.is_closed() || lower.is_closed(),
            Ordering::Less => false,
        },
    }
}

/// Finite union of pairwise disjoint, non-adjacent intervals in ascending
/// order. The empty list is the empty set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Domain {
    intervals: Vec<RealInterval>,
}

impl Domain {
    pub fn real_line() -> Self {
        Domain { intervals: vec![RealInterval::real_line()] }
    }

    pub fn empty() -> Self {
        Domain { intervals: vec![] }
    }

    pub fn from_interval(iv: RealInterval) -> Self {
        Domain::normalize(vec![iv])
    }

    /// Sorts, drops empty pieces and merges overlapping or touching ones.
    pub fn normalize(mut pieces: Vec<RealInterval>) -> Self {
        pieces.retain(|iv| !iv.is_empty());
        pieces.sort_by(|a, b| cmp_lower(&a.lower, &b.lower));
        let mut out: Vec<RealInterval> = Vec::with_capacity(pieces.len());
        for iv in pieces {
            if let Some(last) = out.last_mut() {
                if joins(&last.upper, &iv.lower) {
                    if cmp_upper(&iv.upper, &last.upper) == Ordering::Greater {
                        last.upper = iv.upper;
                    }
                    continue;
                }
            }
            out.push(iv);
        }
        Domain { intervals: out }
    }

    pub fn intervals(&self) -> &[RealInterval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_real_line(&self) -> bool {
        self.intervals.len() == 1 && self.intervals[0] == RealInterval::real_line()
    }

    pub fn contains(&self, t: &Rational) -> bool {
        self.intervals.iter().any(|iv| iv.contains(t))
    }

    pub fn intersect(&self, other: &Domain) -> Domain {
        let mut pieces = Vec::new();
        for a in &self.intervals {
            for b in &other.intervals {
                let c = a.intersect(b);
                if !c.is_empty() {
                    pieces.push(c);
                }
            }
        }
        Domain::normalize(pieces)
    }

    pub fn union(&self, other: &Domain) -> Domain {
        let mut pieces = self.intervals.clone();
        pieces.extend(other.intervals.iter().cloned());
        Domain::normalize(pieces)
    }

    pub fn complement(&self) -> Domain {
        let flip = |e: &Endpoint| match e {
            Endpoint::Infinite => Endpoint::Infinite,
            Endpoint::Open(v) => Endpoint::Closed(v.clone()),
            Endpoint::Closed(v) => Endpoint::Open(v.clone()),
        };
        let mut pieces = Vec::new();
        let mut cursor = Endpoint::Infinite;
        let mut at_start = true;
        for iv in &self.intervals {
            if iv.lower.value().is_some() {
                let lower = if at_start { Endpoint::Infinite } else { cursor.clone() };
                pieces.push(RealInterval::new(lower, flip(&iv.lower)));
            }
            at_start = false;
            match iv.upper.value() {
                Some(_) => cursor = flip(&iv.upper),
                None => return Domain::normalize(pieces),
            }
        }
        let lower = if at_start { Endpoint::Infinite } else { cursor };
        pieces.push(RealInterval::new(lower, Endpoint::Infinite));
        Domain::normalize(pieces)
    }

    pub fn difference(&self, other: &Domain) -> Domain {
        self.intersect(&other.complement())
    }

    pub fn is_subset_of(&self, other: &Domain) -> bool {
        self.difference(other).is_empty()
    }

    /// Removes finitely many points.
    pub fn without_points(&self, points: &[Rational]) -> Domain {
        let holes = Domain::normalize(points.iter().cloned().map(RealInterval::point).collect());
        self.difference(&holes)
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{}", v),
            None => Ok(()),
        }
    }
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lower.is_closed() { "[" } else { "(" };
        let close = if self.upper.is_closed() { "]" } else { ")" };
        let lo = match self.lower.value() {
            Some(v) => v.to_string(),
            None => "-inf".to_string(),
        };
        let hi = match self.upper.value() {
            Some(v) => v.to_string(),
            None => "inf".to_string(),
        };
        write!(f, "{open}{lo},{hi}{close}")
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.intervals.iter().map(|iv| iv.to_string()).collect();
        f.write_str(&parts.join(" U "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{int, ratio};
    use proptest::prelude::*;

    #[test]
    fn touching_pieces_merge() {
        let d = Domain::normalize(vec![
            RealInterval::new(Endpoint::Closed(int(0)), Endpoint::Open(int(1))),
            RealInterval::closed(int(1), int(2)),
        ]);
        assert_eq!(d.intervals(), &[RealInterval::closed(int(0), int(2))]);
    }

    #[test]
    fn punctured_line_stays_split() {
        let d = Domain::real_line().without_points(&[int(1)]);
        assert_eq!(d.intervals().len(), 2);
        assert!(!d.contains(&int(1)));
        assert!(d.contains(&ratio(3, 2)));
        assert_eq!(d.to_string(), "(-inf,1) U (1,inf)");
    }

    #[test]
    fn complement_of_half_line() {
        let d = Domain::from_interval(RealInterval::from_lower(int(0), true));
        assert_eq!(
            d.complement(),
            Domain::from_interval(RealInterval::to_upper(int(0), false))
        );
        assert!(Domain::empty().complement().is_real_line());
        assert!(Domain::real_line().complement().is_empty());
    }

    fn arb_interval() -> impl Strategy<Value = RealInterval> {
        (-6i64..6, 0i64..6, any::<bool>(), any::<bool>(), 0u8..4).prop_map(
            |(a, w, lc, uc, kind)| {
                let lo = if lc { Endpoint::Closed(int(a)) } else { Endpoint::Open(int(a)) };
                let hi = if uc { Endpoint::Closed(int(a + w)) } else { Endpoint::Open(int(a + w)) };
                match kind {
                    0 => RealInterval::new(Endpoint::Infinite, hi),
                    1 => RealInterval::new(lo, Endpoint::Infinite),
                    _ => RealInterval::new(lo, hi),
                }
            },
        )
    }

    fn arb_domain() -> impl Strategy<Value = Vec<RealInterval>> {
        proptest::collection::vec(arb_interval(), 0..5)
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent(pieces in arb_domain()) {
            let once = Domain::normalize(pieces);
            let twice = Domain::normalize(once.intervals().to_vec());
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn set_operations_agree_pointwise(a in arb_domain(), b in arb_domain()) {
            let (da, db) = (Domain::normalize(a.clone()), Domain::normalize(b.clone()));
            let inter = da.intersect(&db);
            let uni = da.union(&db);
            let comp = da.complement();
            for k in -16..=16 {
                let t = ratio(k, 2);
                let in_a = a.iter().any(|iv| iv.contains(&t));
                let in_b = b.iter().any(|iv| iv.contains(&t));
                prop_assert_eq!(da.contains(&t), in_a);
                prop_assert_eq!(inter.contains(&t), in_a && in_b);
                prop_assert_eq!(uni.contains(&t), in_a || in_b);
                prop_assert_eq!(comp.contains(&t), !in_a);
            }
        }

        #[test]
        fn normalized_pieces_are_sorted_and_separated(pieces in arb_domain()) {
            let d = Domain::normalize(pieces);
            for w in d.intervals().windows(2) {
                prop_assert!(!joins(&w[0].upper, &w[1].lower));
                prop_assert!(cmp_lower(&w[0].lower, &w[1].lower) == Ordering::Less);
            }
        }
    }
}
