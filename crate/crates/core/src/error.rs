use std::fmt;

use thiserror::Error;

use crate::ring::{ExponentVector, MonomialOrder};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// The resource a [`BudgetExceeded`] ran out of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Resource {
    /// Recursion steps of the bound evaluator.
    Steps,
    /// Bit length of an intermediate natural number.
    ValueBits,
    /// Nodes visited by an exhaustive search.
    SearchNodes,
    /// Unknowns in an exact linear system.
    SystemSize,
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Resource::Steps => "recursion steps",
            Resource::ValueBits => "value bits",
            Resource::SearchNodes => "search nodes",
            Resource::SystemSize => "linear system size",
        })
    }
}

/// A computation was aborted because it would exceed its budget.
///
/// `progress` describes how far the computation got before it stopped.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct BudgetExceeded {
    pub resource: Resource,
    pub limit: u64,
    pub requested: u64,
    pub steps_used: u64,
    pub progress: String,
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "budget exhausted: {} limit {} (requested {}) after {} steps; {}",
            self.resource, self.limit, self.requested, self.steps_used, self.progress
        )
    }
}

impl std::error::Error for BudgetExceeded {}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("divisor {index} is the zero polynomial")]
    InvalidDivisor { index: usize },
    #[error("input polynomial {index} is the zero polynomial")]
    InvalidInput { index: usize },
    #[error("monomial order {0} is not graded")]
    OrderNotGraded(MonomialOrder),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("chain does not ascend: stage {stage} is not contained in stage {}", stage + 1)]
    ChainNotAscending { stage: usize },
    #[error("chain is not strict: stage {} equals stage {stage}", stage + 1)]
    ChainNotStrict { stage: usize },
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("search budget of {limit} nodes exhausted; best antichain so far has length {}", best.len())]
    SearchExhausted { limit: u64, best: Vec<ExponentVector> },
}

impl Error {
    pub(crate) fn dimension(expected: usize, found: usize) -> Self {
        Error::Dimension { expected, found }
    }

    /// True for the budget-style failures that the CLI reports with a
    /// dedicated exit status.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_) | Error::SearchExhausted { .. })
    }
}
