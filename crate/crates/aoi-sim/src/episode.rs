//! Single-episode rollout against a tape.

use aoi_core::{
    sampling_reduction, step, update_reduction, weighted_sum, Action, AoIState, NetworkConfig,
    Node,
};
use aoi_policies::PolicySpec;

use crate::error::SimError;
use crate::tape::OutageTape;
use crate::trajectory::{SlotRecord, Trajectory};

fn check_action(cfg: &NetworkConfig, action: &Action) -> Result<(), SimError> {
    let fits = action.sample_set().len() == cfg.sample_size()
        && action.update_set().len() == cfg.update_size()
        && action
            .sample_set()
            .iter()
            .chain(action.update_set())
            .all(|&k| k < cfg.n_sensors());
    if fits {
        Ok(())
    } else {
        Err(SimError::InfeasibleAction {
            sample: action.sample_set().len(),
            update: action.update_set().len(),
            k: cfg.n_sensors(),
        })
    }
}

/// Rolls `policy` from the fresh initial state through slot T, drawing every
/// channel outcome from `tape`.
///
/// The slot-T record still carries the action the policy chose there, even
/// though no transition follows it; the tape variates for that slot exist
/// either way, so recording them keeps slot records uniform.
pub fn run_episode(
    cfg: &NetworkConfig,
    policy: &PolicySpec,
    tape: &OutageTape,
    policy_seed: u64,
) -> Result<Trajectory, SimError> {
    assert!(
        tape.horizon() >= cfg.horizon(),
        "tape covers {} slots but the horizon needs {}",
        tape.horizon(),
        cfg.horizon()
    );
    let mut runner = policy.runner(policy_seed);
    let mut state = AoIState::initial(cfg);
    let mut records = Vec::with_capacity(cfg.horizon() as usize);
    for slot in 1..=cfg.horizon() {
        let action = runner.act(cfg, &state);
        check_action(cfg, &action)?;
        let draws = tape.draws_for(cfg, slot, &action);
        let record = SlotRecord {
            sampling_reduction: sampling_reduction(&state, action.sample_set())?,
            update_reduction: update_reduction(&state, action.update_set())?,
            weighted_sum_g: weighted_sum(&state, cfg.weights(), Node::Relay),
            weighted_sum_h: weighted_sum(&state, cfg.weights(), Node::Destination),
            state: state.clone(),
            action: action.clone(),
            draws: draws.clone(),
        };
        if slot < cfg.horizon() {
            state = step(cfg, &state, &action, &draws)?;
        }
        records.push(record);
    }
    Ok(Trajectory::new(cfg.clone(), records))
}
