use thiserror::Error;

use crate::nearring::ViolationReport;
use crate::theorems::UnmetHypothesis;
use crate::Subset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("axiom violation: {0}")]
    AxiomViolation(ViolationReport),

    #[error("additive table is not a group with identity 0: {0}")]
    NotAGroup(ViolationReport),

    #[error("order {order} exceeds the configured cap of {cap}")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("subset {0} is not a two-sided ideal")]
    NotAnIdeal(Subset),

    #[error("strict unity mode requires a nearring with unity")]
    NoUnity,

    #[error("subset {0} is not a bi-ideal")]
    NotABiIdeal(Subset),

    #[error("hypothesis not met: {0}")]
    HypothesisViolation(UnmetHypothesis),

    #[error("internal check failed: {0}")]
    InternalCheckFailed(String),

    #[error("family of subsets must be nonempty (at least {min} members)")]
    EmptyFamily { min: usize },

    #[error("element {element} is out of range for order {order}")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("subset has ambient order {found}, expected {expected}")]
    OrderMismatch { expected: usize, found: usize },
}
