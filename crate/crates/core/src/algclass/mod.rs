//! Algebraic versus transcendental functions, with certificates.
//!
//! A function `f` on `D` is algebraic when some nonzero integer polynomial
//! `P(x, y)` satisfies `P(x, f(x)) = 0` on `D`. Annihilators are built by
//! elimination; transcendence only ever comes from a closure rule.

mod annihilator;
mod enumerate;

use std::fmt;

use thiserror::Error;

use crate::expr::{Domain, Equation, Expr, Rational};
use crate::interval::{eval_interval, DyadicInterval};
use crate::poly::{BiPoly, UniPoly};

pub use enumerate::{enumerate_algebraic, same_number, AlgebraicNumbers, PolynomialsByHeight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("zero polynomial")]
    ZeroInput,
    #[error("empty domain")]
    EmptyDomain,
}

/// The closure rules that establish transcendence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosureRule {
    /// exp, ln, sin or cos of a nonconstant algebraic function.
    ElementaryOfAlgebraic,
    /// `a^x` with `a` a flagged transcendental constant; `f(1) = a`.
    TranscendentalBase,
    /// Inverse of a transcendental function; algebraic injective functions
    /// have algebraic inverses.
    InverseOfTranscendental,
    /// Lambert W of a nonconstant algebraic function.
    LambertOfAlgebraic,
}

impl ClosureRule {
    pub fn tag(self) -> &'static str {
        match self {
            ClosureRule::ElementaryOfAlgebraic => "R1",
            ClosureRule::TranscendentalBase => "R2",
            ClosureRule::InverseOfTranscendental => "R3",
            ClosureRule::LambertOfAlgebraic => "R4",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscendenceReason {
    pub rule: ClosureRule,
    pub premises: Vec<String>,
}

impl fmt::Display for TranscendenceReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rule.tag())?;
        if !self.premises.is_empty() {
            write!(f, " ({})", self.premises.join("; "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraicityCertificate {
    Algebraic { annihilator: BiPoly },
    Transcendental { reason: TranscendenceReason },
    Unknown,
}

impl AlgebraicityCertificate {
    pub fn is_algebraic(&self) -> bool {
        matches!(self, AlgebraicityCertificate::Algebraic { .. })
    }

    pub fn is_transcendental(&self) -> bool {
        matches!(self, AlgebraicityCertificate::Transcendental { .. })
    }
}

impl fmt::Display for AlgebraicityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicityCertificate::Algebraic { annihilator } => {
                write!(f, "algebraic; annihilator: {annihilator}")
            }
            AlgebraicityCertificate::Transcendental { reason } => {
                write!(f, "transcendental; rule {reason}")
            }
            AlgebraicityCertificate::Unknown => f.write_str("unknown"),
        }
    }
}

/// `Σ p_k(x)·y^k` with integer polynomials `p_k`, `p_n ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientForm {
    coeffs: Vec<UniPoly>,
}

impl CoefficientForm {
    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `p_k`, zero beyond the degree.
    pub fn get(&self, k: usize) -> UniPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(UniPoly::zero)
    }
}

impl fmt::Display for CoefficientForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| format!("p_{k} = {p}"))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

pub fn to_coefficient_form(p: &BiPoly) -> Result<CoefficientForm, AlgError> {
    if p.is_zero() {
        return Err(AlgError::ZeroInput);
    }
    Ok(CoefficientForm { coeffs: p.coefficient_form() })
}

pub fn from_coefficient_form(form: &CoefficientForm) -> BiPoly {
    BiPoly::from_coefficient_form(&form.coeffs).expect("integer coefficients")
}

/// Constants treated as transcendental hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscendentalConstants {
    flagged: Vec<Expr>,
}

impl Default for TranscendentalConstants {
    fn default() -> Self {
        TranscendentalConstants { flagged: vec![Expr::E, Expr::Pi] }
    }
}

impl TranscendentalConstants {
    /// Adds a user-declared constant expression.
    pub fn declare(mut self, c: Expr) -> Self {
        if !self.flagged.contains(&c) {
            self.flagged.push(c);
        }
        self
    }

    pub fn contains(&self, c: &Expr) -> bool {
        self.flagged.contains(c)
    }
}

/// Annihilator of `e` when it lies in the constructive algebraic fragment.
pub fn construct_annihilator(e: &Expr) -> Option<BiPoly> {
    annihilator::construct(e)
}

fn is_nonconstant_algebraic(e: &Expr) -> bool {
    e.contains_var() && construct_annihilator(e).is_some()
}

/// The base `a` when `e` is `a^x` spelled `exp(x·ln a)`.
fn base_of_power(e: &Expr) -> Option<&Expr> {
    let Expr::Exp(arg) = e else { return None };
    let Expr::Mul(l, r) = arg.as_ref() else { return None };
    match (l.as_ref(), r.as_ref()) {
        (Expr::Var, Expr::Ln(a)) | (Expr::Ln(a), Expr::Var) if a.is_constant() => Some(a),
        _ => None,
    }
}

fn transcendental(rule: ClosureRule, premises: Vec<String>) -> AlgebraicityCertificate {
    AlgebraicityCertificate::Transcendental { reason: TranscendenceReason { rule, premises } }
}

/// Classification with the default flagged constants `e` and `π`.
pub fn classify(e: &Expr, domain: &Domain) -> Result<AlgebraicityCertificate, AlgError> {
    classify_with(e, domain, &TranscendentalConstants::default())
}

pub fn classify_with(
    e: &Expr,
    domain: &Domain,
    constants: &TranscendentalConstants,
) -> Result<AlgebraicityCertificate, AlgError> {
    if domain.is_empty() {
        return Err(AlgError::EmptyDomain);
    }
    if let Some(p) = construct_annihilator(e) {
        return Ok(AlgebraicityCertificate::Algebraic { annihilator: p });
    }
    if let Some(a) = base_of_power(e) {
        if constants.contains(a) {
            return Ok(transcendental(
                ClosureRule::TranscendentalBase,
                vec![format!("{a} is a flagged transcendental constant"), format!("f(1) = {a}")],
            ));
        }
    }
    Ok(match e {
        Expr::Ln(a) if **a == Expr::Var => transcendental(
            ClosureRule::InverseOfTranscendental,
            vec!["exp(x) is transcendental (R1)".into(), "ln is the inverse of exp".into()],
        ),
        Expr::Exp(a) | Expr::Ln(a) | Expr::Sin(a) | Expr::Cos(a) if is_nonconstant_algebraic(a) => {
            transcendental(ClosureRule::ElementaryOfAlgebraic, vec![format!("{a} is algebraic and nonconstant")])
        }
        Expr::W(_, a) if is_nonconstant_algebraic(a) => {
            transcendental(ClosureRule::LambertOfAlgebraic, vec![format!("{a} is algebraic and nonconstant")])
        }
        _ => AlgebraicityCertificate::Unknown,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnihilatorCheck {
    Verified,
    Refuted,
    Inconclusive,
}

/// `n` rational points spread over `domain`, avoiding endpoints.
pub fn sample_points(domain: &Domain, n: usize) -> Vec<Rational> {
    let ivs = domain.intervals();
    if ivs.is_empty() || n == 0 {
        return Vec::new();
    }
    let per = n.div_ceil(ivs.len());
    let mut out = Vec::new();
    for iv in ivs {
        let (lo, hi) = (iv.lower.value().cloned(), iv.upper.value().cloned());
        for k in 1..=per {
            let k = Rational::from_integer(k.into());
            let step = Rational::new(1.into(), 3.into());
            let t = match (&lo, &hi) {
                (Some(a), Some(b)) if a == b => a.clone(),
                (Some(a), Some(b)) => a + (b - a) * &k / Rational::from_integer((per + 1).into()),
                (Some(a), None) => a + &k * &step,
                (None, Some(b)) => b - &k * &step,
                (None, None) => (&k - Rational::from_integer(((per + 1) / 2).into())) * &step,
            };
            if iv.contains(&t) && !out.contains(&t) {
                out.push(t);
            }
        }
    }
    out.truncate(n);
    out
}

/// Sample-based refutation plus an exact proof when `e` is constructive and
/// its derived annihilator divides `p`.
pub fn annihilator_verify(e: &Expr, p: &BiPoly, samples: usize, precision: u32) -> AnnihilatorCheck {
    if p.is_zero() {
        return AnnihilatorCheck::Inconclusive;
    }
    let nd = e.natural_domain();
    for t in sample_points(&nd.domain, samples) {
        let x = DyadicInterval::from_rational(&t, precision);
        let Ok(y) = eval_interval(e, &x, precision) else { continue };
        if !p.eval_interval(&x, &y).contains_zero() {
            return AnnihilatorCheck::Refuted;
        }
    }
    match construct_annihilator(e) {
        Some(q) if p.prem_y(&q).is_zero() => AnnihilatorCheck::Verified,
        _ => AnnihilatorCheck::Inconclusive,
    }
}

/// `P(y, x)`: annihilates `f⁻¹` on `f(D)` when `P` annihilates an injective `f`.
pub fn inverse_annihilator(p: &BiPoly) -> Result<BiPoly, AlgError> {
    if p.is_zero() {
        return Err(AlgError::ZeroInput);
    }
    Ok(p.swap())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquationClass {
    AlgebraicEq,
    TranscendentalEq,
    UnknownEq,
}

impl fmt::Display for EquationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquationClass::AlgebraicEq => "algebraic equation",
            EquationClass::TranscendentalEq => "transcendental equation",
            EquationClass::UnknownEq => "unclassified equation",
        })
    }
}

pub fn classify_equation(eq: &Equation) -> EquationClass {
    let side = |e: &Expr| classify(e, &eq.domain).unwrap_or(AlgebraicityCertificate::Unknown);
    let (l, r) = (side(&eq.lhs), side(&eq.rhs));
    if l.is_transcendental() || r.is_transcendental() {
        EquationClass::TranscendentalEq
    } else if l.is_algebraic() && r.is_algebraic() {
        EquationClass::AlgebraicEq
    } else {
        EquationClass::UnknownEq
    }
}

#[cfg(test)]
mod tests;
