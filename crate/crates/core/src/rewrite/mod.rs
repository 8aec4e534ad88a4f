//! Tagged rewriting. Each step records how the solution set of its output
//! equation relates to that of its input, so a chain of steps says exactly
//! which solutions may have been gained or lost.

mod check;
mod radsum;
mod rules;
mod sign;

use std::fmt;

use thiserror::Error;

use crate::expr::{DomainCondition, Equation, Expr};

pub use check::{condition_at, grid_violation, holds_at, in_domain, sign_at};
pub use radsum::{RadSum, RadTerm};
pub use rules::{apply_step, apply_step_lossy, isolate_radical, Injective, Rule};
pub use sign::sign_on;

/// A side condition `expr ⋈ 0` under which a step becomes reversible.
pub type SideCondition = DomainCondition;

/// How `N_new` relates to `N_old`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolutionRelation {
    Equivalent,
    /// `N_new ⊇ N_old`: solutions may be gained.
    Superset,
    /// `N_new ⊆ N_old`: solutions may be lost.
    Subset,
    Unknown,
}

impl SolutionRelation {
    pub fn compose(self, other: SolutionRelation) -> SolutionRelation {
        use SolutionRelation::*;
        match (self, other) {
            (Equivalent, r) | (r, Equivalent) => r,
            (Unknown, _) | (_, Unknown) => Unknown,
            (Superset, Superset) => Superset,
            (Subset, Subset) => Subset,
            _ => Unknown,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SolutionRelation::Equivalent => "equivalent",
            SolutionRelation::Superset => "superset",
            SolutionRelation::Subset => "subset",
            SolutionRelation::Unknown => "unknown",
        }
    }
}

impl fmt::Display for SolutionRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rule not applicable: {0}")]
    RuleNotApplicable(String),
    #[error("operand is not defined on the whole domain")]
    DomainMismatch,
    #[error("steps do not chain at position {0}")]
    BrokenChain(usize),
}

/// One tagged transformation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub input: Equation,
    pub output: Equation,
    pub relation: SolutionRelation,
    /// Conditions under which the relation upgrades to equivalence.
    pub side_conditions: Vec<SideCondition>,
    /// Set on steps that may lose solutions; only ever by explicit request.
    pub lossy: bool,
    /// Name of the variable in `output` (differs after a substitution).
    pub output_variable: &'static str,
}

impl Step {
    pub fn output_text(&self) -> String {
        let r = |e: &Expr| crate::parse::render_expr_in(e, self.output_variable);
        format!("{} = {}", r(&self.output.lhs), r(&self.output.rhs))
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.rule, self.relation, self.output_text())?;
        for c in &self.side_conditions {
            write!(f, "; side condition {c}")?;
        }
        Ok(())
    }
}

/// An ordered chain of steps with its composed relation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    steps: Vec<Step>,
    overall: Option<SolutionRelation>,
}

impl Trace {
    pub fn new() -> Self {
        Trace::default()
    }

    pub fn from_steps(steps: Vec<Step>) -> Result<Self, RewriteError> {
        let mut t = Trace::new();
        for s in steps {
            t.push(s)?;
        }
        Ok(t)
    }

    /// Appends a step whose input must equal the last output.
    pub fn push(&mut self, step: Step) -> Result<(), RewriteError> {
        if let Some(last) = self.steps.last() {
            if last.output != step.input {
                return Err(RewriteError::BrokenChain(self.steps.len()));
            }
        }
        self.overall = Some(self.overall().compose(step.relation));
        self.steps.push(step);
        Ok(())
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Composition of all step relations; `Equivalent` for the empty trace.
    pub fn overall(&self) -> SolutionRelation {
        self.overall.unwrap_or(SolutionRelation::Equivalent)
    }

    pub fn last_equation(&self) -> Option<&Equation> {
        self.steps.last().map(|s| &s.output)
    }

    pub fn side_conditions(&self) -> impl Iterator<Item = &SideCondition> {
        self.steps.iter().flat_map(|s| s.side_conditions.iter())
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "{:>2}. {s}", i + 1)?;
        }
        write!(f, "overall: {}", self.overall())
    }
}

/// Checks the chain and folds the composition table over its steps.
pub fn compose(steps: &[Step]) -> Result<SolutionRelation, RewriteError> {
    for (i, w) in steps.windows(2).enumerate() {
        if w[0].output != w[1].input {
            return Err(RewriteError::BrokenChain(i + 1));
        }
    }
    Ok(steps.iter().fold(SolutionRelation::Equivalent, |acc, s| acc.compose(s.relation)))
}

#[cfg(test)]
mod tests;
