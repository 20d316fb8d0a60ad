//! Closed-form references and machine-checkable verdicts for the relay
//! network's structural claims.
//!
//! The closed forms give the minimum attainable age sums of errorless
//! symmetric instances as plain integer formulas. The checkers take recorded
//! trajectories and verdict concrete instances of the structural claims
//! behind those formulas: age ordering across the relay hop, exact reduction
//! accounting, sampling-before-updating precedence, and the two optimality
//! conditions that characterize schedules attaining the minimum. The sweep
//! builders generate seeded instance batches so the same verdicts can run as
//! a property suite from tests or from the command line.

mod checks;
mod closed_form;
mod error;
mod report;
mod suite;

pub use checks::{
    check_age_accounting, check_age_ordering, check_optimality_conditions,
    check_reduction_precedence, DEFAULT_SEARCH_BUDGET,
};
pub use closed_form::{
    greedy_reduction_formulas, min_sum_g, min_sum_h, relay_fill_time, update_drain_time,
};
pub use error::TheoryError;
pub use report::{instance_label, CheckReport, Violation};
pub use suite::{errorless_identity_sweep, lossy_ordering_sweep, SweepOutcome};
