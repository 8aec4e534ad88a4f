//! Lambert W on both real branches and inverse-function values, all as
//! certified enclosures.

mod inverse;
mod lambert;

use thiserror::Error;

pub use inverse::{inverse_value, InverseFunctionValue};
pub use lambert::{cmp_branch_point, lambert_w, neg_inv_e};
pub(crate) use lambert::w_interval;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecialError {
    #[error("argument lies outside the branch domain")]
    OutOfBranchDomain,
    #[error("target lies outside the range of the branch")]
    TargetOutsideRange,
    #[error("function is not certified strictly monotone on the branch domain")]
    NotMonotone,
    #[error("branch domain must be a single interval")]
    MultiIntervalDomain,
    #[error("target must be a constant")]
    NonConstantTarget,
    #[error("could not bracket the value")]
    Inconclusive,
}

#[cfg(test)]
mod tests;
