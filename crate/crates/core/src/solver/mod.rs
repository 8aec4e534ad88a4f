//! Strategy orchestration. Each strategy either settles the equation or
//! declines; candidates from steps that may gain solutions are checked
//! against the original equation before they are reported.

mod monotone;
mod polynomial;
mod strategies;
mod verify;

use std::fmt;

use thiserror::Error;

use crate::expr::{Equation, Expr, Rational};
use crate::interval::{eval_interval, DyadicInterval};
use crate::poly::{IsolatedRoot, QuadElem, QuadraticSurd};
use crate::rewrite::Trace;
use crate::special::{inverse_value, InverseFunctionValue};

pub use monotone::{count_solutions_monotone, prove_monotone, MonotoneCount, Monotonicity};
pub use verify::{compact_condition, identity_check, verify_candidate, IdentityResult, Rejection, Verification};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("domain must be a single interval")]
    MultiIntervalDomain,
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
}

/// A root known through a certificate rather than a closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertifiedRoot {
    Isolated(IsolatedRoot),
    /// Value of an inverse function; `isolated` is kept when the root is
    /// also known as a polynomial root.
    Inverse { value: InverseFunctionValue, enclosure: DyadicInterval, isolated: Option<IsolatedRoot> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionRep {
    ExactRational(Rational),
    QuadraticSurd(QuadraticSurd),
    /// A constant expression.
    ClosedForm(Expr),
    CertifiedRoot(CertifiedRoot),
}

impl SolutionRep {
    /// Enclosure of the value of width at most about `2^-precision`.
    pub fn enclosure(&self, precision: u32) -> DyadicInterval {
        match self {
            SolutionRep::ExactRational(r) => DyadicInterval::from_rational(r, precision),
            SolutionRep::QuadraticSurd(s) => s.enclosure(precision),
            SolutionRep::ClosedForm(e) => {
                let x = DyadicInterval::point_int(0);
                let mut p = precision + 16;
                loop {
                    match eval_interval(e, &x, p) {
                        Ok(v) if v.is_bounded() && (v.width_f64() <= 2f64.powi(-(precision as i32)) || p > 4 * precision + 64) => {
                            return v;
                        }
                        Ok(_) => p += precision / 2 + 16,
                        Err(_) => return DyadicInterval::entire(precision),
                    }
                }
            }
            SolutionRep::CertifiedRoot(CertifiedRoot::Isolated(r)) => r.enclosure(precision),
            SolutionRep::CertifiedRoot(CertifiedRoot::Inverse { value, enclosure, isolated }) => {
                if enclosure.precision() >= precision {
                    return enclosure.clone();
                }
                if let Some(r) = isolated {
                    return r.enclosure(precision);
                }
                inverse_value(value, precision).unwrap_or_else(|_| enclosure.clone())
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SolutionRep::ExactRational(_) => "exact_rational",
            SolutionRep::QuadraticSurd(_) => "quadratic_surd",
            SolutionRep::ClosedForm(_) => "closed_form",
            SolutionRep::CertifiedRoot(_) => "certified_root",
        }
    }

    /// The value as a constant expression, for exact representations.
    pub fn to_expr(&self) -> Option<Expr> {
        match self {
            SolutionRep::ExactRational(r) => Some(Expr::Lit(r.clone())),
            SolutionRep::QuadraticSurd(s) => Some(s.to_expr()),
            SolutionRep::ClosedForm(e) => Some(e.clone()),
            SolutionRep::CertifiedRoot(_) => None,
        }
    }

    /// Exact representation of a constant expression: a rational, an
    /// element `a + b·√d`, or else the expression itself.
    pub fn from_constant(e: &Expr) -> Option<SolutionRep> {
        if !e.is_constant() {
            return None;
        }
        Some(match surd_value(e) {
            Some(q) if num_traits::Zero::is_zero(&q.b) => SolutionRep::ExactRational(q.a),
            Some(q) => SolutionRep::QuadraticSurd(QuadraticSurd::new(q.a, q.b, q.d)),
            None => SolutionRep::ClosedForm(e.clone()),
        })
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            SolutionRep::ExactRational(r) => Some(r),
            SolutionRep::QuadraticSurd(s) => s.as_rational(),
            _ => None,
        }
    }
}

fn surd_value(e: &Expr) -> Option<QuadElem> {
    use num_traits::{One, Signed, Zero};
    let one = || num_bigint::BigInt::one();
    let lift = |q: QuadElem, d: &num_bigint::BigInt| -> Option<QuadElem> {
        if q.b.is_zero() {
            Some(QuadElem::from_rational(q.a, d))
        } else if &q.d == d {
            Some(q)
        } else {
            None
        }
    };
    let pair = |a: &Expr, b: &Expr| -> Option<(QuadElem, QuadElem)> {
        let (x, y) = (surd_value(a)?, surd_value(b)?);
        let d = if x.b.is_zero() { y.d.clone() } else { x.d.clone() };
        Some((lift(x, &d)?, lift(y, &d)?))
    };
    match e {
        Expr::Lit(r) => Some(QuadElem::from_rational(r.clone(), &one())),
        Expr::Neg(a) => {
            let q = surd_value(a)?;
            Some(QuadElem { a: -q.a, b: -q.b, d: q.d })
        }
        Expr::Add(a, b) => pair(a, b).map(|(x, y)| x.add(&y)),
        Expr::Sub(a, b) => pair(a, b).map(|(x, y)| x.sub(&y)),
        Expr::Mul(a, b) => pair(a, b).map(|(x, y)| x.mul(&y)),
        Expr::Div(a, b) => pair(a, b).and_then(|(x, y)| x.div(&y)),
        Expr::Pow(a, k) => {
            let q = surd_value(a)?;
            let mut acc = QuadElem::from_rational(Rational::one(), &q.d);
            for _ in 0..k.unsigned_abs() {
                acc = acc.mul(&q);
            }
            if *k < 0 {
                QuadElem::from_rational(Rational::one(), &q.d).div(&acc)
            } else {
                Some(acc)
            }
        }
        Expr::Root(2, a) => {
            let r = a.as_lit()?;
            if r.is_negative() {
                return None;
            }
            let s = QuadraticSurd::new(Rational::zero(), Rational::new(1.into(), r.denom().clone()), r.numer() * r.denom());
            Some(if s.b.is_zero() { QuadElem::from_rational(s.a, &one()) } else { s.elem() })
        }
        _ => None,
    }
}

/// Checks a constant `candidate` against `eq`. Without a proof from the
/// equation alone, the solver's trace is used as the certificate: an exact
/// root of its final equation that satisfies every side condition solves
/// the original equation.
pub fn check_candidate(eq: &Equation, candidate: &Expr, config: &SolveConfig) -> Result<Verification, SolverError> {
    let rep = SolutionRep::from_constant(candidate).ok_or(SolverError::PreconditionViolated("candidate must be constant"))?;
    let direct = verify_candidate(eq, &rep, &Trace::new(), config.max_precision);
    if !matches!(direct, Verification::Inconclusive(_)) {
        return Ok(direct);
    }
    let report = solve(eq, config);
    if report.solutions == SolutionSet::Identity {
        return Ok(verify::in_equation_domain(eq, &rep, config.max_precision)
            .map_or(direct, |inside| if inside { Verification::Verified } else { Verification::Rejected(Rejection::OutsideDomain) }));
    }
    if report.trace.is_empty() {
        return Ok(direct);
    }
    Ok(match verify_candidate(eq, &rep, &report.trace, config.max_precision) {
        Verification::Inconclusive(_) => direct,
        v => v,
    })
}

impl fmt::Display for SolutionRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::parse::{render_expr, render_rational};
        match self {
            SolutionRep::ExactRational(r) => f.write_str(&render_rational(r)),
            SolutionRep::QuadraticSurd(s) => f.write_str(&render_expr(&s.to_expr())),
            SolutionRep::ClosedForm(e) => f.write_str(&render_expr(e)),
            SolutionRep::CertifiedRoot(CertifiedRoot::Isolated(r)) => {
                write!(f, "the root of {} in [{}, {}]", r.poly, r.lower(), r.upper())
            }
            SolutionRep::CertifiedRoot(CertifiedRoot::Inverse { value, .. }) => write!(f, "{value}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionSet {
    Finite(Vec<SolutionRep>),
    Empty,
    /// Every point of the domain.
    Identity,
    Unsolved(String),
}

impl SolutionSet {
    fn from_reps(reps: Vec<SolutionRep>) -> SolutionSet {
        if reps.is_empty() {
            SolutionSet::Empty
        } else {
            SolutionSet::Finite(reps)
        }
    }

    pub fn solutions(&self) -> &[SolutionRep] {
        match self {
            SolutionSet::Finite(v) => v,
            _ => &[],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Identity,
    Polynomial,
    Rational,
    Radical,
    ExpLambert,
    Monotone,
}

impl Strategy {
    pub const ALL: [Strategy; 6] = [
        Strategy::Identity,
        Strategy::Polynomial,
        Strategy::Rational,
        Strategy::Radical,
        Strategy::ExpLambert,
        Strategy::Monotone,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Identity => "identity",
            Strategy::Polynomial => "polynomial",
            Strategy::Rational => "rational",
            Strategy::Radical => "radical",
            Strategy::ExpLambert => "exp-lambert",
            Strategy::Monotone => "monotone",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveConfig {
    /// Bits of the reported enclosures.
    pub precision: u32,
    /// Ceiling for adaptive precision during verification.
    pub max_precision: u32,
    /// Number of grid points used when falsifying rewriting steps.
    pub grid_size: usize,
    /// Strategies tried, always in the fixed order of [`Strategy::ALL`].
    pub strategies: Vec<Strategy>,
    /// Keep the steps of strategies that declined.
    pub verbose_trace: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            precision: 256,
            max_precision: 2048,
            grid_size: 64,
            strategies: Strategy::ALL.to_vec(),
            verbose_trace: false,
        }
    }
}

impl SolveConfig {
    pub fn with_precision(mut self, precision: u32) -> Self {
        self.precision = precision;
        self.max_precision = self.max_precision.max(precision * 2);
        self
    }

    fn enabled(&self, s: Strategy) -> bool {
        self.strategies.contains(&s)
    }
}

/// Everything `solve` found out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub equation: Equation,
    pub solutions: SolutionSet,
    pub trace: Trace,
    pub strategy: Option<Strategy>,
    /// Candidates of the rewritten equation that fail the original one.
    pub rejected: Vec<(SolutionRep, Rejection)>,
    /// Candidates neither proved nor refuted.
    pub inconclusive: Vec<(SolutionRep, String)>,
    pub notes: Vec<String>,
    /// Bits of the reported enclosures.
    pub precision: u32,
}

impl SolveReport {
    fn new(eq: &Equation, precision: u32) -> Self {
        SolveReport {
            equation: eq.clone(),
            solutions: SolutionSet::Unsolved("no strategy applies".to_string()),
            trace: Trace::new(),
            strategy: None,
            rejected: Vec::new(),
            inconclusive: Vec::new(),
            notes: Vec::new(),
            precision,
        }
    }
}

/// Solves `eq` over its domain. Strategies run in the fixed order
/// identity, polynomial, rational, radical, exp/Lambert, monotone.
pub fn solve(eq: &Equation, config: &SolveConfig) -> SolveReport {
    let mut report = SolveReport::new(eq, config.precision);
    if eq.domain.is_empty() {
        report.solutions = SolutionSet::Empty;
        report.notes.push("the domain is empty".to_string());
        return report;
    }
    for s in Strategy::ALL {
        if !config.enabled(s) {
            continue;
        }
        let done = match s {
            Strategy::Identity => strategies::identity(eq, &mut report),
            Strategy::Polynomial => strategies::polynomial(eq, config, &mut report),
            Strategy::Rational => strategies::rational(eq, config, &mut report),
            Strategy::Radical => strategies::radical(eq, config, &mut report),
            Strategy::ExpLambert => strategies::exp_lambert(eq, config, &mut report),
            Strategy::Monotone => strategies::monotone(eq, config, &mut report),
        };
        if done {
            report.strategy = Some(s);
            return report;
        }
    }
    report
}
