//! Solution-set aware solving of single-variable real equations.
//!
//! Every rewriting step records how the solution set of the new equation
//! relates to the old one (equal, larger or smaller). Candidates produced
//! by non-equivalent steps are checked against the original equation, and
//! every numeric answer is a certified enclosure.
//!
//! The crate is organised bottom-up:
//!
//! * [`expr`]: expressions, exact rationals, real-line domains, equations
//! * [`parse`]: text grammar and JSON rendering
//! * [`interval`]: outward-rounded dyadic interval arithmetic
//! * [`poly`]: exact univariate and bivariate polynomial algebra
//! * [`algclass`]: algebraic / transcendental classification with certificates
//! * [`special`]: Lambert W and inverse-function values
//! * [`rewrite`]: tagged transformation steps and traces
//! * [`solver`]: strategy orchestration and candidate verification

pub mod algclass;
pub mod expr;
pub mod interval;
pub mod parse;
pub mod poly;
pub mod rewrite;
pub mod solver;
pub mod special;

pub use expr::{Branch, Domain, Equation, Expr, Rational};
pub use interval::DyadicInterval;
pub use rewrite::{SolutionRelation, Step, Trace};
pub use solver::{solve, SolutionRep, SolutionSet, SolveConfig, SolveReport};
