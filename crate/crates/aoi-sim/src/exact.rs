//! Exact expected value by outcome enumeration.
//!
//! Every positive-probability combination of policy randomness and channel
//! outcomes is walked once, depth first in deterministic order, so the
//! returned expectation carries no sampling error and serves as the oracle
//! that Monte Carlo estimates and optimality claims are checked against.

use aoi_core::{outage_patterns, step, weighted_sum, AoIState, NetworkConfig, Node};
use aoi_policies::PolicySpec;

use crate::error::SimError;

/// Default bound on the number of enumerated branches.
pub const DEFAULT_PATH_CAP: u64 = 1 << 24;

fn per_slot_branch_bound(cfg: &NetworkConfig, policy: &PolicySpec) -> u128 {
    let support: u128 = match policy {
        PolicySpec::Greedy | PolicySpec::DpOptimal(_) | PolicySpec::FixedSequence(_) => 1,
        PolicySpec::UniformRandom => u128::from(aoi_core::feasible_actions(cfg).len()),
        PolicySpec::QGreedy {
            exploration_rate, ..
        } => {
            if *exploration_rate == 0.0 {
                1
            } else {
                u128::from(aoi_core::feasible_actions(cfg).len())
            }
        }
    };
    let lossy = |probs: &[f64], width: usize| {
        probs.iter().filter(|&&v| v > 0.0).count().min(width) as u32
    };
    let outcomes = 1u128
        << (lossy(cfg.sample_outage_probs(), cfg.sample_size())
            + lossy(cfg.update_outage_probs(), cfg.update_size()));
    support * outcomes
}

/// Exact time-averaged expected weighted destination age of `policy`.
///
/// Instances whose branch count `(support × outage outcomes)^(T-1)` exceeds
/// `path_cap` are refused up front.
pub fn exact_expected_value(
    cfg: &NetworkConfig,
    policy: &PolicySpec,
    path_cap: u64,
) -> Result<f64, SimError> {
    let per_slot = per_slot_branch_bound(cfg, policy);
    let required = per_slot.checked_pow(cfg.horizon() - 1);
    if required.is_none() || required.unwrap() > u128::from(path_cap) {
        return Err(SimError::PathBudgetExceeded { cap: path_cap });
    }
    let mut total = 0.0;
    descend(cfg, policy, &AoIState::initial(cfg), 1.0, &mut total);
    Ok(total / f64::from(cfg.horizon()))
}

fn descend(
    cfg: &NetworkConfig,
    policy: &PolicySpec,
    state: &AoIState,
    probability: f64,
    total: &mut f64,
) {
    *total += probability * weighted_sum(state, cfg.weights(), Node::Destination);
    if state.t == cfg.horizon() {
        return;
    }
    for (action, action_probability) in policy.action_distribution(cfg, state) {
        for (draws, outcome_probability) in outage_patterns(cfg, &action) {
            let next = step(cfg, state, &action, &draws)
                .expect("enumerated actions and outcomes stay feasible");
            descend(
                cfg,
                policy,
                &next,
                probability * action_probability * outcome_probability,
                total,
            );
        }
    }
}
