use std::fmt;

use super::{Domain, DomainCondition, Expr};

/// `lhs = rhs` over a domain. The solution set is
/// `{x ∈ domain : lhs(x) = rhs(x)}`.
///
/// The stored domain is always contained in the natural domains of both
/// sides; construction intersects the declared domain with them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Expr,
    pub rhs: Expr,
    pub domain: Domain,
    /// The domain as declared, before intersecting with natural domains.
    declared: Domain,
    approximate: bool,
}

impl Equation {
    pub fn new(lhs: Expr, rhs: Expr, declared: Domain) -> Self {
        let nl = lhs.natural_domain();
        let nr = rhs.natural_domain();
        let domain = declared.intersect(&nl.domain).intersect(&nr.domain);
        Equation {
            lhs,
            rhs,
            domain,
            declared,
            approximate: nl.approximate || nr.approximate,
        }
    }

    /// Equation over the intersection of the natural domains.
    pub fn natural(lhs: Expr, rhs: Expr) -> Self {
        Equation::new(lhs, rhs, Domain::real_line())
    }

    pub fn declared_domain(&self) -> &Domain {
        &self.declared
    }

    /// Whether some natural-domain boundary was irrational, so that
    /// `domain` is a strict, conservative subset.
    pub fn is_domain_approximate(&self) -> bool {
        self.approximate
    }

    /// `lhs - rhs`.
    pub fn difference(&self) -> Expr {
        self.lhs.clone() - self.rhs.clone()
    }

    /// Constraints that make both sides real, used to test membership of
    /// irrational points exactly.
    pub fn domain_conditions(&self) -> Vec<DomainCondition> {
        let mut conds = self.lhs.domain_conditions();
        for c in self.rhs.domain_conditions() {
            if !conds.contains(&c) {
                conds.push(c);
            }
        }
        conds
    }

    /// Same sides, new declared domain.
    pub fn with_domain(&self, declared: Domain) -> Self {
        Equation::new(self.lhs.clone(), self.rhs.clone(), declared)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}
