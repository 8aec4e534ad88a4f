//! Exact polynomial algebra: univariate polynomials over Q with Sturm root
//! isolation, rational functions, quadratic surds, and bivariate integer
//! polynomials with resultants.

mod bipoly;
mod rational_fn;
mod roots;
mod sturm;
mod uni;

use thiserror::Error;

pub use bipoly::{
    bareiss_det, interpolate, resultant, resultant_by_evaluation, sylvester_det, BiPoly, Var,
};
pub use rational_fn::RationalFunction;
pub use roots::{
    quadratic_solve, rational_roots, square_part, substitution_reduce, QuadElem, QuadraticSurd,
};
pub use sturm::{
    cauchy_bound, count_roots, sign_set, sign_variations, sturm_isolate, sturm_sequence,
    IsolatedRoot,
};
pub use uni::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("expression is not a polynomial")]
    NotPolynomial,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree out of range")]
    DegreeOutOfRange,
    #[error("zero input")]
    ZeroInput,
    #[error("variable does not occur")]
    NoOccurrence,
    #[error("coefficient is not an integer")]
    NonIntegerCoefficient,
}
