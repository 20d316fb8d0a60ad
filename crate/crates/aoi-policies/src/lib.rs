//! Scheduling policies for the relay network.
//!
//! A policy maps the current age state to one slot's selection. This crate
//! provides the production policies (greedy, uniform random, a learned
//! tabular policy) alongside the exact references used to judge them: a
//! finite-horizon dynamic program that is optimal by construction, a
//! deterministic evaluator for fixed action sequences, and exhaustive
//! searches over schedule space for instances small enough to enumerate.

mod dp;
mod error;
mod exhaustive;
mod fixed;
mod greedy;
mod qlearn;
mod random;
mod spec;

pub use dp::{solve_backward_induction, DpTable, DEFAULT_STATE_CAP};
pub use error::PolicyError;
pub use exhaustive::{
    maximum_double_accumulated_sampling, minimum_total_destination_age, ExhaustiveMinimum,
};
pub use fixed::{evaluate_fixed_sequence, FixedEvaluation};
pub use greedy::{greedy_action, greedy_errorless_actions};
pub use qlearn::{
    evaluate_greedy_table_policy, q_action, train_q_learning, CurvePoint, QLearningConfig, QTable,
    TrainingOutcome,
};
pub use random::random_action;
pub use spec::{PolicyRunner, PolicySpec};
