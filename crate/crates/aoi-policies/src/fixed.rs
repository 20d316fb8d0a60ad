use aoi_core::{
    sampling_reduction, step, update_reduction, weighted_sum, Action, AoIState, NetworkConfig,
    Node, OutageDraws,
};

use crate::error::PolicyError;

/// Deterministic rollout of one fixed schedule on an errorless instance.
///
/// Slots are 1-based; entry `t - 1` of each per-slot vector belongs to slot
/// `t`. The reductions are taken on the pre-transition state of their slot,
/// including the final slot, whose action no longer influences any tracked
/// age.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedEvaluation {
    /// `sum_t sum_k w_k h_k(t)` over the horizon.
    pub weighted_total: f64,
    /// Unweighted `sum_t sum_k h_k(t)`, exact in integers.
    pub sum_h_total: u64,
    pub sum_g_per_slot: Vec<u64>,
    pub sum_h_per_slot: Vec<u64>,
    pub weighted_sum_h_per_slot: Vec<f64>,
    /// Relay age removed by each slot's sample set.
    pub sampling_reductions: Vec<u64>,
    /// Destination gap removed by each slot's update set.
    pub update_reductions: Vec<u64>,
}

impl FixedEvaluation {
    /// Time-averaged weighted destination age, the quantity policies compete
    /// on.
    pub fn time_average(&self) -> f64 {
        self.weighted_total / self.sum_h_per_slot.len() as f64
    }
}

/// Rolls `actions` from the initial state with every transmission
/// succeeding, and accounts the per-slot ages and reductions.
///
/// Only errorless instances qualify: with outages possible the rollout value
/// is a random variable and this evaluator would be lying about it.
pub fn evaluate_fixed_sequence(
    cfg: &NetworkConfig,
    actions: &[Action],
) -> Result<FixedEvaluation, PolicyError> {
    if !cfg.is_errorless() {
        return Err(PolicyError::ErrorlessOnly);
    }
    let slots = cfg.horizon() as usize;
    if actions.len() != slots {
        return Err(PolicyError::SequenceLengthMismatch {
            expected: slots,
            got: actions.len(),
        });
    }

    let no_outage = OutageDraws::none(cfg);
    let mut state = AoIState::initial(cfg);
    let mut evaluation = FixedEvaluation {
        weighted_total: 0.0,
        sum_h_total: 0,
        sum_g_per_slot: Vec::with_capacity(slots),
        sum_h_per_slot: Vec::with_capacity(slots),
        weighted_sum_h_per_slot: Vec::with_capacity(slots),
        sampling_reductions: Vec::with_capacity(slots),
        update_reductions: Vec::with_capacity(slots),
    };
    for (slot, action) in actions.iter().enumerate() {
        let weighted = weighted_sum(&state, cfg.weights(), Node::Destination);
        evaluation.weighted_total += weighted;
        evaluation.sum_h_total += state.sum_h();
        evaluation.sum_g_per_slot.push(state.sum_g());
        evaluation.sum_h_per_slot.push(state.sum_h());
        evaluation.weighted_sum_h_per_slot.push(weighted);
        evaluation
            .sampling_reductions
            .push(sampling_reduction(&state, action.sample_set())?);
        evaluation
            .update_reductions
            .push(update_reduction(&state, action.update_set())?);
        if slot + 1 < slots {
            state = step(cfg, &state, action, &no_outage)?;
        }
    }
    Ok(evaluation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greedy::greedy_errorless_actions;

    #[test]
    fn greedy_schedule_hits_the_reference_trajectory() {
        let cfg = NetworkConfig::errorless_symmetric(5, 3, 3, 6).unwrap();
        let actions = greedy_errorless_actions(&cfg).unwrap();
        let eval = evaluate_fixed_sequence(&cfg, &actions).unwrap();
        assert_eq!(eval.sum_g_per_slot, vec![5, 7, 7, 7, 7, 7]);
        assert_eq!(eval.sum_h_per_slot, vec![5, 10, 12, 12, 12, 12]);
        assert_eq!(eval.sum_h_total, 63);
        assert_eq!(eval.sampling_reductions, vec![3, 5, 5, 5, 5, 5]);
        assert_eq!(eval.update_reductions, vec![0, 3, 5, 5, 5, 5]);
        assert!((eval.time_average() - 63.0 / 30.0).abs() < 1e-12);
    }

    #[test]
    fn ignoring_a_sensor_lets_its_destination_age_run() {
        let cfg = NetworkConfig::errorless_symmetric(2, 1, 1, 6).unwrap();
        let only_first = Action::new(&cfg, vec![0], vec![0]).unwrap();
        let actions = vec![only_first; 6];
        let eval = evaluate_fixed_sequence(&cfg, &actions).unwrap();
        // Sensor 2 is never updated, so its destination age is exactly t.
        assert_eq!(eval.sum_h_per_slot, vec![2, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn rejects_wrong_length_and_error_prone_instances() {
        let cfg = NetworkConfig::errorless_symmetric(2, 1, 1, 4).unwrap();
        let action = Action::new(&cfg, vec![0], vec![0]).unwrap();
        assert_eq!(
            evaluate_fixed_sequence(&cfg, &vec![action.clone(); 3]).unwrap_err(),
            PolicyError::SequenceLengthMismatch {
                expected: 4,
                got: 3
            }
        );
        let lossy = NetworkConfig::symmetric(2, 1, 1, 4, 0.2, 0.0).unwrap();
        assert_eq!(
            evaluate_fixed_sequence(&lossy, &vec![action; 4]).unwrap_err(),
            PolicyError::ErrorlessOnly
        );
    }
}
