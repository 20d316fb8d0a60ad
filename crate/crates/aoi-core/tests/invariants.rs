//! Property tests for the slot dynamics.
//!
//! Action sequences and outage outcomes are drawn arbitrarily, so these
//! exercise every policy-reachable corner of the transition, not just the
//! schedules a sensible policy would produce.

use aoi_core::{
    feasible_actions, sampling_reduction, step, update_reduction, AoIState, NetworkConfig,
    OutageDraws,
};
use proptest::collection::vec;
use proptest::prelude::*;

/// A random instance plus one arbitrary action index and outage outcome per
/// slot. Outage flags are unconstrained: the transition treats them as
/// realized events, whatever the configured probabilities are.
fn scripted_rollout() -> impl Strategy<
    Value = (
        NetworkConfig,
        Vec<u64>,
        Vec<(Vec<bool>, Vec<bool>)>,
    ),
> {
    (2usize..=6)
        .prop_flat_map(|k| (Just(k), 1..k, 1..k, 2u32..=10))
        .prop_flat_map(|(k, s, u, horizon)| {
            let cfg = NetworkConfig::errorless_symmetric(k, s, u, horizon).unwrap();
            let n_actions = feasible_actions(&cfg).len();
            let slots = horizon as usize;
            (
                Just(cfg),
                vec(0..n_actions, slots),
                vec((vec(any::<bool>(), s), vec(any::<bool>(), u)), slots),
            )
        })
}

proptest! {
    /// Every relay age either resets to 1 (sampled, no outage) or grows by
    /// one; every destination age either falls to the pre-slot relay age plus
    /// one (updated, no outage) or grows by one.
    #[test]
    fn ages_reset_or_grow_by_one((cfg, actions, draws) in scripted_rollout()) {
        let space = feasible_actions(&cfg);
        let mut state = AoIState::initial(&cfg);
        for (index, (sample_draws, update_draws)) in actions.iter().zip(&draws) {
            let action = space.action(*index);
            let outcome = OutageDraws::new(sample_draws.clone(), update_draws.clone());
            let next = step(&cfg, &state, &action, &outcome).unwrap();
            prop_assert_eq!(next.t, state.t + 1);
            for k in 0..cfg.n_sensors() {
                let sampled_ok = action
                    .sample_set()
                    .iter()
                    .position(|&s| s == k)
                    .is_some_and(|rank| !outcome.sample[rank]);
                let expected_g = if sampled_ok { 1 } else { state.g[k] + 1 };
                prop_assert_eq!(next.g[k], expected_g);

                let updated_ok = action
                    .update_set()
                    .iter()
                    .position(|&u| u == k)
                    .is_some_and(|rank| !outcome.update[rank]);
                let expected_h = if updated_ok {
                    state.g[k] + 1
                } else {
                    state.h[k] + 1
                };
                prop_assert_eq!(next.h[k], expected_h);
            }
            state = next;
        }
    }

    /// Along any rollout from the initial state: ages never exceed the slot
    /// index, the destination is never fresher than the relay, and the
    /// destination age is at least the previous slot's relay age plus one.
    #[test]
    fn destination_lags_relay((cfg, actions, draws) in scripted_rollout()) {
        let space = feasible_actions(&cfg);
        let mut state = AoIState::initial(&cfg);
        for (index, (sample_draws, update_draws)) in actions.iter().zip(&draws) {
            let previous_g = state.g.clone();
            let action = space.action(*index);
            let outcome = OutageDraws::new(sample_draws.clone(), update_draws.clone());
            state = step(&cfg, &state, &action, &outcome).unwrap();
            for k in 0..cfg.n_sensors() {
                prop_assert!(state.g[k] <= state.t);
                prop_assert!(state.h[k] <= state.t);
                prop_assert!(state.h[k] >= state.g[k]);
                prop_assert!(state.h[k] >= previous_g[k] + 1);
            }
        }
    }

    /// With reliable links, age totals are exactly the no-help totals minus
    /// the accumulated reductions, and the reduction removed by updating can
    /// never outrun what sampling made available a slot earlier.
    #[test]
    fn errorless_rollouts_balance_their_reductions((cfg, actions, _) in scripted_rollout()) {
        let space = feasible_actions(&cfg);
        let k = cfg.n_sensors() as u64;
        let mut state = AoIState::initial(&cfg);
        let mut sampling_total = 0u64;
        let mut update_total = 0u64;
        for index in &actions {
            let t = u64::from(state.t);
            prop_assert_eq!(state.sum_g(), t * k - sampling_total);
            prop_assert_eq!(state.sum_h(), t * k - update_total);

            let action = space.action(*index);
            let r_sample = sampling_reduction(&state, action.sample_set()).unwrap();
            let r_update = update_reduction(&state, action.update_set()).unwrap();
            prop_assert!(update_total + r_update <= sampling_total);

            state = step(&cfg, &state, &action, &OutageDraws::none(&cfg)).unwrap();
            sampling_total += r_sample;
            update_total += r_update;
        }
    }

    /// The transition is a pure function of its inputs.
    #[test]
    fn step_is_deterministic((cfg, actions, draws) in scripted_rollout()) {
        let space = feasible_actions(&cfg);
        let state = AoIState::initial(&cfg);
        let action = space.action(actions[0]);
        let outcome = OutageDraws::new(draws[0].0.clone(), draws[0].1.clone());
        let once = step(&cfg, &state, &action, &outcome).unwrap();
        let twice = step(&cfg, &state, &action, &outcome).unwrap();
        prop_assert_eq!(once, twice);
    }
}
