//! Exhaustive searches over schedule space for errorless instances.
//!
//! Both searches enumerate every relevant deterministic schedule, so they
//! only run when the instance is small enough to fit a caller-supplied
//! budget; past it they refuse rather than silently truncate. They serve as
//! ground truth for judging other policies, not as policies themselves.

use aoi_core::{
    combinatorics::{binomial, combination_unrank},
    feasible_actions, sampling_reduction, step, Action, ActionSpace, AoIState, NetworkConfig,
    OutageDraws,
};

use crate::error::PolicyError;

/// Result of the full-schedule search: the smallest achievable total
/// destination age and one schedule achieving it.
#[derive(Debug, Clone, PartialEq)]
pub struct ExhaustiveMinimum {
    /// Minimal `sum_t sum_k h_k(t)` over all schedules, exact in integers.
    pub minimum_sum_h_total: u64,
    /// Lexicographically first schedule attaining the minimum, one action per
    /// slot. The final slot's action cannot influence the total, so it is the
    /// canonical first action.
    pub argmin_actions: Vec<Action>,
}

/// Searches every action sequence of an errorless instance for the minimal
/// total destination age.
///
/// The schedule space has `feasible_actions(cfg).len()` to the power `T`
/// members; `budget` bounds that count. Refuses error-prone instances, where
/// a single rollout per schedule would not be its value, and instances past
/// the budget. The final slot contributes no branching internally because
/// ages are only tracked through slot `T`.
pub fn minimum_total_destination_age(
    cfg: &NetworkConfig,
    budget: u64,
) -> Result<ExhaustiveMinimum, PolicyError> {
    if !cfg.is_errorless() {
        return Err(PolicyError::ErrorlessOnly);
    }
    let space = feasible_actions(cfg);
    let slots = cfg.horizon() as usize;
    let required = (space.len() as u128).saturating_pow(cfg.horizon());
    if required > u128::from(budget) {
        return Err(PolicyError::SearchBudgetExceeded { budget, required });
    }

    let mut search = MinSearch {
        cfg,
        space: &space,
        slots,
        best_total: u64::MAX,
        best_prefix: Vec::new(),
        prefix: Vec::new(),
    };
    search.descend(&AoIState::initial(cfg), 0);

    let mut argmin_actions: Vec<Action> = search
        .best_prefix
        .iter()
        .map(|&index| space.action(index))
        .collect();
    argmin_actions.resize_with(slots, || space.action(0));
    Ok(ExhaustiveMinimum {
        minimum_sum_h_total: search.best_total,
        argmin_actions,
    })
}

struct MinSearch<'a> {
    cfg: &'a NetworkConfig,
    space: &'a ActionSpace,
    slots: usize,
    best_total: u64,
    best_prefix: Vec<u64>,
    prefix: Vec<u64>,
}

impl MinSearch<'_> {
    fn descend(&mut self, state: &AoIState, total_so_far: u64) {
        let total = total_so_far + state.sum_h();
        if state.t as usize == self.slots {
            if total < self.best_total {
                self.best_total = total;
                self.best_prefix = self.prefix.clone();
            }
            return;
        }
        let no_outage = OutageDraws::none(self.cfg);
        for index in 0..self.space.len() {
            let action = self.space.action(index);
            let next = step(self.cfg, state, &action, &no_outage)
                .expect("enumerated actions are feasible");
            self.prefix.push(index);
            self.descend(&next, total);
            self.prefix.pop();
        }
    }
}

/// Maximum over all sampling schedules of the doubly accumulated sampling
/// reduction `sum_{t=1..T} sum_{tau<=t-2} R(sample set at tau)`.
///
/// Slot `tau`'s reduction is counted once for every later slot `t >= tau+2`,
/// so the objective weights it by `T - tau - 1` and only slots up to `T - 2`
/// matter; the search branches over `C(K, S)` sample sets for each of those
/// slots, which is the count `budget` bounds. Update choices never touch
/// relay ages and are not enumerated. Horizons of one or two slots make the
/// sum empty, so the maximum is 0.
pub fn maximum_double_accumulated_sampling(
    cfg: &NetworkConfig,
    budget: u64,
) -> Result<u64, PolicyError> {
    if !cfg.is_errorless() {
        return Err(PolicyError::ErrorlessOnly);
    }
    let horizon = cfg.horizon();
    if horizon <= 2 {
        return Ok(0);
    }
    let depth = (horizon - 2) as usize;
    let n_sets = binomial(cfg.n_sensors(), cfg.sample_size());
    let required = (n_sets as u128).saturating_pow(depth as u32);
    if required > u128::from(budget) {
        return Err(PolicyError::SearchBudgetExceeded { budget, required });
    }

    let sets: Vec<Vec<usize>> = (0..n_sets)
        .map(|rank| combination_unrank(cfg.n_sensors(), cfg.sample_size(), rank))
        .collect();
    let initial = AoIState::initial(cfg);
    let mut best = 0u64;
    descend_sampling(cfg, &sets, &initial, 0, depth, horizon, &mut best);
    Ok(best)
}

fn descend_sampling(
    cfg: &NetworkConfig,
    sets: &[Vec<usize>],
    state: &AoIState,
    value_so_far: u64,
    remaining: usize,
    horizon: u32,
    best: &mut u64,
) {
    if remaining == 0 {
        *best = (*best).max(value_so_far);
        return;
    }
    let weight = u64::from(horizon - state.t - 1);
    for set in sets {
        let reduction = sampling_reduction(state, set).expect("enumerated sets are in range");
        let mut next = AoIState {
            t: state.t + 1,
            g: state.g.iter().map(|&v| v + 1).collect(),
            h: state.h.clone(),
        };
        for &k in set {
            next.g[k] = 1;
        }
        descend_sampling(
            cfg,
            sets,
            &next,
            value_so_far + weight * reduction,
            remaining - 1,
            horizon,
            best,
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed::evaluate_fixed_sequence;
    use crate::greedy::greedy_errorless_actions;

    #[test]
    fn two_sensor_three_slot_minimum_is_eleven() {
        let cfg = NetworkConfig::errorless_symmetric(2, 1, 1, 3).unwrap();
        let result = minimum_total_destination_age(&cfg, 1_000_000).unwrap();
        assert_eq!(result.minimum_sum_h_total, 11);
        assert_eq!(result.argmin_actions.len(), 3);
        let replay = evaluate_fixed_sequence(&cfg, &result.argmin_actions).unwrap();
        assert_eq!(replay.sum_h_total, 11);
    }

    #[test]
    fn greedy_attains_the_exhaustive_minimum() {
        let cfg = NetworkConfig::errorless_symmetric(3, 1, 1, 4).unwrap();
        let exhaustive = minimum_total_destination_age(&cfg, 1_000_000).unwrap();
        let greedy = evaluate_fixed_sequence(&cfg, &greedy_errorless_actions(&cfg).unwrap())
            .unwrap();
        assert_eq!(greedy.sum_h_total, exhaustive.minimum_sum_h_total);
    }

    #[test]
    fn refuses_past_the_budget() {
        let cfg = NetworkConfig::errorless_symmetric(3, 1, 1, 4).unwrap();
        let err = minimum_total_destination_age(&cfg, 100).unwrap_err();
        assert_eq!(
            err,
            PolicyError::SearchBudgetExceeded {
                budget: 100,
                required: 6561
            }
        );
    }

    #[test]
    fn refuses_error_prone_instances() {
        let cfg = NetworkConfig::symmetric(3, 1, 1, 4, 0.1, 0.1).unwrap();
        assert_eq!(
            minimum_total_destination_age(&cfg, 1_000_000).unwrap_err(),
            PolicyError::ErrorlessOnly
        );
    }

    #[test]
    fn sampling_search_matches_hand_count() {
        // K=3, S=1, T=4: slot 1 must reduce 1, slot 2 can reduce at most 2,
        // with weights 2 and 1: maximum 2*1 + 1*2 = 4.
        let cfg = NetworkConfig::errorless_symmetric(3, 1, 1, 4).unwrap();
        assert_eq!(maximum_double_accumulated_sampling(&cfg, 1 << 20).unwrap(), 4);

        let short = NetworkConfig::errorless_symmetric(3, 1, 1, 2).unwrap();
        assert_eq!(maximum_double_accumulated_sampling(&short, 1 << 20).unwrap(), 0);
    }

    #[test]
    fn greedy_matches_the_sampling_search() {
        for (k, s) in [(3usize, 1usize), (4, 2), (5, 3)] {
            let cfg = NetworkConfig::errorless_symmetric(k, s, s, 5).unwrap();
            let best = maximum_double_accumulated_sampling(&cfg, 1 << 24).unwrap();
            let greedy = evaluate_fixed_sequence(&cfg, &greedy_errorless_actions(&cfg).unwrap())
                .unwrap();
            let horizon = cfg.horizon() as u64;
            let achieved: u64 = greedy
                .sampling_reductions
                .iter()
                .enumerate()
                .take((horizon as usize).saturating_sub(2))
                .map(|(slot, &r)| (horizon - slot as u64 - 2) * r)
                .sum();
            assert_eq!(achieved, best);
        }
    }
}
