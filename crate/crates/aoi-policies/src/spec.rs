//! Uniform policy interface for the simulator.
//!
//! A `PolicySpec` names a decision rule; a `PolicyRunner` binds it to a
//! seeded generator so stochastic rules draw reproducibly. Exact evaluation
//! bypasses the generator through `action_distribution`, which exposes each
//! rule's per-state action probabilities.

use std::sync::Arc;

use aoi_core::{feasible_actions, Action, AoIState, NetworkConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dp::DpTable;
use crate::greedy::greedy_action;
use crate::qlearn::{q_action, QTable};
use crate::random::random_action;

/// A decision rule over age states.
#[derive(Debug, Clone)]
pub enum PolicySpec {
    /// Sample the largest weighted relay ages, update the largest weighted
    /// age gaps.
    Greedy,
    /// Draw uniformly over all feasible actions.
    UniformRandom,
    /// Follow a solved backward-induction table.
    DpOptimal(Arc<DpTable>),
    /// Follow a learned table greedily, optionally keeping some exploration.
    QGreedy {
        table: Arc<QTable>,
        exploration_rate: f64,
    },
    /// Replay a fixed schedule, one action per slot.
    FixedSequence(Arc<Vec<Action>>),
}

impl PolicySpec {
    /// Short stable name used in output rows.
    pub fn id(&self) -> &'static str {
        match self {
            PolicySpec::Greedy => "greedy",
            PolicySpec::UniformRandom => "random",
            PolicySpec::DpOptimal(_) => "dp",
            PolicySpec::QGreedy { .. } => "q",
            PolicySpec::FixedSequence(_) => "fixed",
        }
    }

    /// Binds the rule to a fresh seeded generator.
    pub fn runner(&self, policy_seed: u64) -> PolicyRunner {
        PolicyRunner {
            spec: self.clone(),
            rng: ChaCha8Rng::seed_from_u64(policy_seed),
        }
    }

    /// Action probabilities in a state, for exact expectation sweeps.
    ///
    /// Deterministic rules return a single unit-mass action; stochastic
    /// rules enumerate every action with positive probability.
    pub fn action_distribution(
        &self,
        cfg: &NetworkConfig,
        state: &AoIState,
    ) -> Vec<(Action, f64)> {
        let space = feasible_actions(cfg);
        match self {
            PolicySpec::Greedy => vec![(greedy_action(cfg, state), 1.0)],
            PolicySpec::UniformRandom => {
                let share = 1.0 / space.len() as f64;
                space.iter().map(|action| (action, share)).collect()
            }
            PolicySpec::DpOptimal(table) => {
                let action = table
                    .action(state)
                    .expect("solved table covers every reachable state");
                vec![(action, 1.0)]
            }
            PolicySpec::QGreedy {
                table,
                exploration_rate,
            } => {
                let greedy_index = table.greedy_index(state);
                if *exploration_rate == 0.0 {
                    return vec![(space.action(greedy_index), 1.0)];
                }
                let share = exploration_rate / space.len() as f64;
                space
                    .iter()
                    .enumerate()
                    .map(|(index, action)| {
                        let mut probability = share;
                        if index as u64 == greedy_index {
                            probability += 1.0 - exploration_rate;
                        }
                        (action, probability)
                    })
                    .collect()
            }
            PolicySpec::FixedSequence(actions) => {
                let slot = (state.t as usize).wrapping_sub(1);
                vec![(actions[slot].clone(), 1.0)]
            }
        }
    }
}

/// A policy bound to its own randomness stream.
pub struct PolicyRunner {
    spec: PolicySpec,
    rng: ChaCha8Rng,
}

impl PolicyRunner {
    pub fn id(&self) -> &'static str {
        self.spec.id()
    }

    /// Chooses the action for the given state.
    pub fn act(&mut self, cfg: &NetworkConfig, state: &AoIState) -> Action {
        match &self.spec {
            PolicySpec::Greedy => greedy_action(cfg, state),
            PolicySpec::UniformRandom => random_action(cfg, &mut self.rng),
            PolicySpec::DpOptimal(table) => table
                .action(state)
                .expect("solved table covers every reachable state"),
            PolicySpec::QGreedy {
                table,
                exploration_rate,
            } => q_action(cfg, table, state, *exploration_rate, &mut self.rng),
            PolicySpec::FixedSequence(actions) => {
                actions[(state.t as usize).wrapping_sub(1)].clone()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::{solve_backward_induction, DEFAULT_STATE_CAP};
    use crate::qlearn::{train_q_learning, QLearningConfig};

    fn all_ids_cfg() -> NetworkConfig {
        NetworkConfig::errorless_symmetric(2, 1, 1, 3).unwrap()
    }

    #[test]
    fn ids_name_each_rule() {
        let cfg = all_ids_cfg();
        let dp = Arc::new(solve_backward_induction(&cfg, DEFAULT_STATE_CAP).unwrap());
        let q = Arc::new(train_q_learning(&cfg, &QLearningConfig::default(), 1).table);
        let fixed = Arc::new(vec![feasible_actions(&cfg).action(0); 3]);
        let specs = [
            (PolicySpec::Greedy, "greedy"),
            (PolicySpec::UniformRandom, "random"),
            (PolicySpec::DpOptimal(dp), "dp"),
            (
                PolicySpec::QGreedy {
                    table: q,
                    exploration_rate: 0.0,
                },
                "q",
            ),
            (PolicySpec::FixedSequence(fixed), "fixed"),
        ];
        for (spec, id) in specs {
            assert_eq!(spec.id(), id);
            assert_eq!(spec.runner(0).id(), id);
        }
    }

    #[test]
    fn greedy_runner_matches_the_direct_rule() {
        let cfg = NetworkConfig::errorless_symmetric(3, 1, 1, 5).unwrap();
        let state = AoIState {
            t: 2,
            g: vec![1, 2, 2],
            h: vec![2, 2, 3],
        };
        let mut runner = PolicySpec::Greedy.runner(0);
        assert_eq!(runner.act(&cfg, &state), greedy_action(&cfg, &state));
        let distribution = PolicySpec::Greedy.action_distribution(&cfg, &state);
        assert_eq!(distribution.len(), 1);
        assert_eq!(distribution[0].0, greedy_action(&cfg, &state));
        assert_eq!(distribution[0].1, 1.0);
    }

    #[test]
    fn random_runner_is_seed_reproducible() {
        let cfg = all_ids_cfg();
        let state = AoIState::initial(&cfg);
        let draw = |seed| {
            let mut runner = PolicySpec::UniformRandom.runner(seed);
            (0..8).map(|_| runner.act(&cfg, &state)).collect::<Vec<_>>()
        };
        assert_eq!(draw(4), draw(4));
        assert_ne!(draw(4), draw(5));
    }

    #[test]
    fn uniform_distribution_covers_the_whole_action_space() {
        let cfg = all_ids_cfg();
        let state = AoIState::initial(&cfg);
        let distribution = PolicySpec::UniformRandom.action_distribution(&cfg, &state);
        assert_eq!(distribution.len(), 4);
        let mass: f64 = distribution.iter().map(|(_, p)| p).sum();
        assert!((mass - 1.0).abs() < 1e-12);
        for (_, probability) in &distribution {
            assert!((probability - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn dp_runner_plays_the_lowest_indexed_optimal_action_first() {
        let cfg = all_ids_cfg();
        let table = Arc::new(solve_backward_induction(&cfg, DEFAULT_STATE_CAP).unwrap());
        let mut runner = PolicySpec::DpOptimal(table).runner(0);
        let action = runner.act(&cfg, &AoIState::initial(&cfg));
        // Slot 1 actions all tie on a fresh state, so the first one wins.
        assert_eq!(action, feasible_actions(&cfg).action(0));
    }

    #[test]
    fn exploring_table_mixes_uniform_mass_into_the_greedy_action() {
        let cfg = all_ids_cfg();
        let table = Arc::new(train_q_learning(&cfg, &QLearningConfig::default(), 1).table);
        let state = AoIState::initial(&cfg);
        let greedy_index = table.greedy_index(&state);
        let spec = PolicySpec::QGreedy {
            table,
            exploration_rate: 0.2,
        };
        let distribution = spec.action_distribution(&cfg, &state);
        assert_eq!(distribution.len(), 4);
        let mass: f64 = distribution.iter().map(|(_, p)| p).sum();
        assert!((mass - 1.0).abs() < 1e-12);
        let space = feasible_actions(&cfg);
        for (action, probability) in &distribution {
            let expected = if space.index_of(action) == greedy_index {
                0.8 + 0.05
            } else {
                0.05
            };
            assert!((probability - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn fixed_sequence_replays_slot_by_slot() {
        let cfg = all_ids_cfg();
        let space = feasible_actions(&cfg);
        let schedule = Arc::new(vec![space.action(2), space.action(0), space.action(3)]);
        let mut runner = PolicySpec::FixedSequence(schedule.clone()).runner(0);
        for (slot, expected) in schedule.iter().enumerate() {
            let state = AoIState {
                t: slot as u32 + 1,
                g: vec![1, 1],
                h: vec![1, 1],
            };
            assert_eq!(&runner.act(&cfg, &state), expected);
        }
    }
}
