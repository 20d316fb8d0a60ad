//! Tabular Q-learning over the age process.
//!
//! States are keyed by slot plus ages clipped at a cap, so long horizons do
//! not blow up the table while short ones stay exact. Rewards are the
//! negated per-slot share of the objective, which makes the greedy policy of
//! a converged table minimize the time-averaged weighted destination age.

use std::collections::HashMap;
use std::fmt::Write as _;

use aoi_core::{
    feasible_actions, step, weighted_sum, Action, ActionSpace, AoIState, NetworkConfig, Node,
    OutageDraws,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dp::{join_ages, parse_ages, parse_config_header, parse_field, render_config_header};
use crate::error::PolicyError;

/// Training hyperparameters.
///
/// `clip_cap` of `None` picks `min(T, 12)`, large enough to keep small
/// instances exact. `eval_every` of zero disables the learning curve.
#[derive(Debug, Clone, PartialEq)]
pub struct QLearningConfig {
    pub episodes: usize,
    pub learning_rate: f64,
    pub exploration_rate: f64,
    pub clip_cap: Option<u32>,
    pub eval_every: usize,
    pub eval_runs: usize,
}

impl Default for QLearningConfig {
    fn default() -> Self {
        Self {
            episodes: 20_000,
            learning_rate: 0.1,
            exploration_rate: 0.1,
            clip_cap: None,
            eval_every: 0,
            eval_runs: 1,
        }
    }
}

/// Learned action values, keyed by clipped state.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    cfg: NetworkConfig,
    clip_cap: u32,
    n_actions: u64,
    values: HashMap<AoIState, Vec<f64>>,
}

/// One point of the greedy-policy learning curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub episode: usize,
    pub value: f64,
}

/// A trained table plus the periodic greedy evaluations taken during
/// training.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingOutcome {
    pub table: QTable,
    pub curve: Vec<CurvePoint>,
}

impl QTable {
    fn empty(cfg: &NetworkConfig, clip_cap: u32) -> Self {
        Self {
            cfg: cfg.clone(),
            clip_cap,
            n_actions: feasible_actions(cfg).len(),
            values: HashMap::new(),
        }
    }

    pub fn cfg(&self) -> &NetworkConfig {
        &self.cfg
    }

    pub fn clip_cap(&self) -> u32 {
        self.clip_cap
    }

    /// Number of distinct clipped states the table has visited.
    pub fn n_states(&self) -> usize {
        self.values.len()
    }

    fn key(&self, state: &AoIState) -> AoIState {
        AoIState {
            t: state.t,
            g: state.g.iter().map(|&v| v.min(self.clip_cap)).collect(),
            h: state.h.iter().map(|&v| v.min(self.clip_cap)).collect(),
        }
    }

    /// Greedy action index for a state; unvisited states fall back to the
    /// first feasible action.
    pub fn greedy_index(&self, state: &AoIState) -> u64 {
        match self.values.get(&self.key(state)) {
            None => 0,
            Some(values) => {
                let mut best = 0usize;
                for (index, value) in values.iter().enumerate().skip(1) {
                    if *value > values[best] {
                        best = index;
                    }
                }
                best as u64
            }
        }
    }

    fn max_value(&self, state: &AoIState) -> f64 {
        match self.values.get(&self.key(state)) {
            None => 0.0,
            Some(values) => values.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        }
    }

    fn update(&mut self, state: &AoIState, action_index: u64, target: f64, learning_rate: f64) {
        let n_actions = self.n_actions as usize;
        let entry = self
            .values
            .entry(self.key(state))
            .or_insert_with(|| vec![0.0; n_actions]);
        let value = &mut entry[action_index as usize];
        *value += learning_rate * (target - *value);
    }

    /// Flat text form mirroring the solved-table format: a commented header,
    /// then one line per visited state with its action values.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# q-table v1").unwrap();
        out.push_str(&render_config_header(&self.cfg));
        writeln!(out, "# clip {}", self.clip_cap).unwrap();
        let mut states: Vec<(&AoIState, &Vec<f64>)> = self.values.iter().collect();
        states.sort_by(|(a, _), (b, _)| (a.t, &a.g, &a.h).cmp(&(b.t, &b.g, &b.h)));
        for (state, values) in states {
            let rendered: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            writeln!(
                out,
                "{} {} {} {}",
                state.t,
                join_ages(&state.g),
                join_ages(&state.h),
                rendered.join(" ")
            )
            .unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, PolicyError> {
        let (cfg, body) = parse_config_header(text, "q-table v1")?;
        let clip_line = text
            .lines()
            .find_map(|line| line.trim().strip_prefix("# clip "))
            .ok_or_else(|| PolicyError::TableFormat {
                line: 1,
                message: "header missing clip".into(),
            })?;
        let clip_cap: u32 = parse_field(clip_line.trim(), 1, "clip")?;
        let mut table = Self::empty(&cfg, clip_cap);
        let n_actions = table.n_actions as usize;
        for (line_number, line) in body {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 + n_actions {
                return Err(PolicyError::TableFormat {
                    line: line_number,
                    message: format!("expected {} fields, got {}", 3 + n_actions, fields.len()),
                });
            }
            let state = AoIState {
                t: parse_field(fields[0], line_number, "slot")?,
                g: parse_ages(fields[1], line_number)?,
                h: parse_ages(fields[2], line_number)?,
            };
            let values: Result<Vec<f64>, PolicyError> = fields[3..]
                .iter()
                .map(|field| parse_field(field, line_number, "action value"))
                .collect();
            table.values.insert(state, values?);
        }
        Ok(table)
    }
}

/// Picks an action from the table with epsilon-greedy exploration.
///
/// With zero exploration no randomness is consumed, so the greedy policy of
/// a fixed table is deterministic.
pub fn q_action<R: Rng + ?Sized>(
    cfg: &NetworkConfig,
    table: &QTable,
    state: &AoIState,
    exploration_rate: f64,
    rng: &mut R,
) -> Action {
    let space = feasible_actions(cfg);
    if exploration_rate > 0.0 && rng.random::<f64>() < exploration_rate {
        space.action(rng.random_range(0..space.len()))
    } else {
        space.action(table.greedy_index(state))
    }
}

fn draw_outages<R: Rng + ?Sized>(cfg: &NetworkConfig, action: &Action, rng: &mut R) -> OutageDraws {
    let sample = action
        .sample_set()
        .iter()
        .map(|&k| rng.random::<f64>() < cfg.sample_outage_probs()[k])
        .collect();
    let update = action
        .update_set()
        .iter()
        .map(|&k| rng.random::<f64>() < cfg.update_outage_probs()[k])
        .collect();
    OutageDraws { sample, update }
}

/// Trains a table with one-step Q-learning on simulated episodes.
///
/// Each transition is rewarded with the successor slot's negated weighted
/// destination age divided by the horizon; final-slot successors bootstrap
/// zero. Exploration and channel outages share one seeded generator, so a
/// given `(cfg, qcfg, seed)` always trains the same table.
pub fn train_q_learning(
    cfg: &NetworkConfig,
    qcfg: &QLearningConfig,
    seed: u64,
) -> TrainingOutcome {
    assert!(qcfg.episodes > 0, "training needs at least one episode");
    assert!(
        qcfg.learning_rate > 0.0 && qcfg.learning_rate <= 1.0,
        "learning rate must lie in (0, 1]"
    );
    assert!(
        (0.0..=1.0).contains(&qcfg.exploration_rate),
        "exploration rate must lie in [0, 1]"
    );
    let clip_cap = qcfg.clip_cap.unwrap_or_else(|| cfg.horizon().min(12)).max(1);
    let mut table = QTable::empty(cfg, clip_cap);
    let mut curve = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let horizon = f64::from(cfg.horizon());

    for episode in 1..=qcfg.episodes {
        let mut state = AoIState::initial(cfg);
        while state.t < cfg.horizon() {
            let action = q_action(cfg, &table, &state, qcfg.exploration_rate, &mut rng);
            let action_index = feasible_actions(cfg).index_of(&action);
            let draws = draw_outages(cfg, &action, &mut rng);
            let next = step(cfg, &state, &action, &draws)
                .expect("training transitions stay inside the horizon");
            let reward = -weighted_sum(&next, cfg.weights(), Node::Destination) / horizon;
            let bootstrap = if next.t == cfg.horizon() {
                0.0
            } else {
                table.max_value(&next)
            };
            table.update(&state, action_index, reward + bootstrap, qcfg.learning_rate);
            state = next;
        }
        if qcfg.eval_every > 0 && episode % qcfg.eval_every == 0 {
            let eval_seed = seed
                .wrapping_add(0x9e37_79b9_7f4a_7c15)
                .wrapping_add(episode as u64);
            curve.push(CurvePoint {
                episode,
                value: evaluate_greedy_table_policy(cfg, &table, qcfg.eval_runs, eval_seed),
            });
        }
    }

    TrainingOutcome { table, curve }
}

/// Monte Carlo value of the table's greedy policy: the mean over `runs`
/// episodes of the time-averaged weighted destination age.
pub fn evaluate_greedy_table_policy(
    cfg: &NetworkConfig,
    table: &QTable,
    runs: usize,
    seed: u64,
) -> f64 {
    assert!(runs > 0, "evaluation needs at least one run");
    let space = feasible_actions(cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0.0;
    for _ in 0..runs {
        total += rollout_value(cfg, &space, table, &mut rng);
    }
    total / runs as f64
}

fn rollout_value<R: Rng + ?Sized>(
    cfg: &NetworkConfig,
    space: &ActionSpace,
    table: &QTable,
    rng: &mut R,
) -> f64 {
    let mut state = AoIState::initial(cfg);
    let mut total = weighted_sum(&state, cfg.weights(), Node::Destination);
    while state.t < cfg.horizon() {
        let action = space.action(table.greedy_index(&state));
        let draws = draw_outages(cfg, &action, rng);
        state = step(cfg, &state, &action, &draws)
            .expect("rollout transitions stay inside the horizon");
        total += weighted_sum(&state, cfg.weights(), Node::Destination);
    }
    total / f64::from(cfg.horizon())
}
