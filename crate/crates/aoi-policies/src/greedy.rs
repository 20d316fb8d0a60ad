use aoi_core::{step, Action, AoIState, NetworkConfig, OutageDraws};

use crate::error::PolicyError;

/// The myopic policy: sample the sensors with the largest weighted relay
/// ages, update the sensors with the largest weighted relay-to-destination
/// gaps.
///
/// Both choices score sensor `k` as `w_k * g_k` respectively
/// `w_k * (h_k - g_k)` and take the top `S` respectively `U`, breaking score
/// ties toward the lowest sensor index, so the chosen sets are deterministic.
pub fn greedy_action(cfg: &NetworkConfig, state: &AoIState) -> Action {
    assert_eq!(
        state.n_sensors(),
        cfg.n_sensors(),
        "state and config disagree on sensor count"
    );
    let weights = cfg.weights();
    let sample_scores: Vec<f64> = state
        .g
        .iter()
        .zip(weights)
        .map(|(&g, &w)| w * f64::from(g))
        .collect();
    let update_scores: Vec<f64> = state
        .g
        .iter()
        .zip(&state.h)
        .zip(weights)
        .map(|((&g, &h), &w)| w * f64::from(h - g))
        .collect();
    Action::from_sorted_unchecked(
        top_indices(&sample_scores, cfg.sample_size()),
        top_indices(&update_scores, cfg.update_size()),
    )
}

/// Indices of the `count` largest scores, ties to the lowest index, returned
/// sorted ascending.
fn top_indices(scores: &[f64], count: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .expect("age scores are finite")
            .then(a.cmp(&b))
    });
    let mut chosen = order[..count].to_vec();
    chosen.sort_unstable();
    chosen
}

/// The greedy schedule over the whole horizon of an errorless instance,
/// obtained by rolling the dynamics with no outages. One action per slot.
pub fn greedy_errorless_actions(cfg: &NetworkConfig) -> Result<Vec<Action>, PolicyError> {
    if !cfg.is_errorless() {
        return Err(PolicyError::ErrorlessOnly);
    }
    let no_outage = OutageDraws::none(cfg);
    let mut state = AoIState::initial(cfg);
    let mut actions = Vec::with_capacity(cfg.horizon() as usize);
    for _ in 0..cfg.horizon() {
        let action = greedy_action(cfg, &state);
        state = step(cfg, &state, &action, &no_outage)?;
        actions.push(action);
    }
    Ok(actions)
}
