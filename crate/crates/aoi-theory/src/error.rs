//! Error type for the closed forms and checkers.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    /// Closed-form parameters outside the admissible range.
    #[error("parameter out of domain: {what}")]
    Domain { what: String },
    /// An identity that only holds under deterministic resets was asked of a
    /// trajectory recorded with nonzero outage probabilities.
    #[error("check requires an errorless trajectory, but {what}")]
    LossyTrajectory { what: String },
    /// Optimality checks compare against an exhaustive search; the schedule
    /// space of this instance exceeds the allowed budget.
    #[error("exhaustive search needs {required} sequences, budget is {budget}")]
    SearchBudgetExceeded { budget: u64, required: u128 },
    /// Optimality conditions are stated for equal-weight instances only.
    #[error("check requires a symmetric instance, but {what}")]
    AsymmetricInstance { what: String },
}
