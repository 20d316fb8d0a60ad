//! Finite-horizon dynamic programming over the exact age process.
//!
//! The state space is expanded forward from the initial state, keeping only
//! states some action sequence and outage outcome can actually reach, then
//! costs-to-go are rolled backward with exact outage expectations per step.
//! The result is optimal by construction and serves as the reference that
//! heuristic and learned policies are measured against on small instances.

use std::collections::HashMap;
use std::fmt::Write as _;

use aoi_core::{
    feasible_actions, outage_patterns, step, weighted_sum, Action, AoIState, NetworkConfig, Node,
};

use crate::error::PolicyError;

/// Default bound on the forward-reachable state count.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
struct DpEntry {
    cost_to_go: f64,
    action_index: u64,
}

/// Solved table: for every reachable state, the minimal expected remaining
/// cost and an action attaining it.
///
/// The cost accounts the weighted destination age of the state's own slot
/// plus everything after it, so final-slot states carry just their own
/// contribution and the root carries the whole objective.
#[derive(Debug, Clone, PartialEq)]
pub struct DpTable {
    cfg: NetworkConfig,
    slots: Vec<HashMap<AoIState, DpEntry>>,
}

/// Expands the reachable state space of `cfg` and solves it exactly.
///
/// `state_cap` bounds the total number of reachable states across all slots;
/// instances that expand past it are refused rather than solved partially.
/// Expected values enumerate every positive-probability outage outcome of
/// each action, so the solution is exact up to floating-point rounding.
pub fn solve_backward_induction(
    cfg: &NetworkConfig,
    state_cap: usize,
) -> Result<DpTable, PolicyError> {
    let space = feasible_actions(cfg);
    let actions: Vec<Action> = space.iter().collect();
    let patterns_per_action: Vec<_> = actions
        .iter()
        .map(|action| outage_patterns(cfg, action))
        .collect();
    let slots = cfg.horizon() as usize;

    let mut reachable: Vec<Vec<AoIState>> = Vec::with_capacity(slots);
    reachable.push(vec![AoIState::initial(cfg)]);
    let mut total_states = 1usize;
    for _ in 1..slots {
        let mut next_level: HashMap<AoIState, ()> = HashMap::new();
        for state in reachable.last().unwrap() {
            for (action, patterns) in actions.iter().zip(&patterns_per_action) {
                for (draws, _) in patterns {
                    let next = step(cfg, state, action, draws)?;
                    next_level.entry(next).or_insert(());
                    // Refuse as soon as the running total clears the cap;
                    // finishing the exploding layer first could take minutes.
                    if total_states + next_level.len() > state_cap {
                        return Err(PolicyError::StateCapExceeded {
                            cap: state_cap,
                            reached: total_states + next_level.len(),
                        });
                    }
                }
            }
        }
        total_states += next_level.len();
        let mut level: Vec<AoIState> = next_level.into_keys().collect();
        level.sort_by(|a, b| (&a.g, &a.h).cmp(&(&b.g, &b.h)));
        reachable.push(level);
    }

    let mut table = vec![HashMap::new(); slots];
    for state in &reachable[slots - 1] {
        let cost = weighted_sum(state, cfg.weights(), Node::Destination);
        table[slots - 1].insert(
            state.clone(),
            DpEntry {
                cost_to_go: cost,
                action_index: 0,
            },
        );
    }
    for slot in (0..slots.saturating_sub(1)).rev() {
        let (current, later) = table.split_at_mut(slot + 1);
        let next_table = &later[0];
        for state in &reachable[slot] {
            let own_cost = weighted_sum(state, cfg.weights(), Node::Destination);
            let mut best_expected = f64::INFINITY;
            let mut best_action = 0u64;
            for (index, (action, patterns)) in actions.iter().zip(&patterns_per_action).enumerate()
            {
                let mut expected = 0.0;
                for (draws, probability) in patterns {
                    let next = step(cfg, state, action, draws)?;
                    expected += probability
                        * next_table
                            .get(&next)
                            .expect("forward expansion covers every successor")
                            .cost_to_go;
                }
                if expected < best_expected {
                    best_expected = expected;
                    best_action = index as u64;
                }
            }
            current[slot].insert(
                state.clone(),
                DpEntry {
                    cost_to_go: own_cost + best_expected,
                    action_index: best_action,
                },
            );
        }
    }

    Ok(DpTable {
        cfg: cfg.clone(),
        slots: table,
    })
}

impl DpTable {
    pub fn cfg(&self) -> &NetworkConfig {
        &self.cfg
    }

    /// Total reachable states across all slots.
    pub fn n_states(&self) -> usize {
        self.slots.iter().map(HashMap::len).sum()
    }

    /// Minimal expected total cost `E[sum_t sum_k w_k h_k(t)]` from slot 1.
    pub fn root_cost(&self) -> f64 {
        let initial = AoIState::initial(&self.cfg);
        self.slots[0]
            .get(&initial)
            .expect("initial state is always solved")
            .cost_to_go
    }

    /// Minimal time-averaged weighted destination age over the horizon.
    pub fn optimal_value(&self) -> f64 {
        self.root_cost() / f64::from(self.cfg.horizon())
    }

    /// Optimal action for a reachable state of the solved instance.
    pub fn action(&self, state: &AoIState) -> Result<Action, PolicyError> {
        let slot = state.t as usize;
        let entry = self
            .slots
            .get(slot.wrapping_sub(1))
            .and_then(|level| level.get(state))
            .ok_or(PolicyError::StateNotSolved { t: state.t })?;
        Ok(feasible_actions(&self.cfg).action(entry.action_index))
    }

    /// Expected remaining cost of a reachable state, when solved.
    pub fn cost_to_go(&self, state: &AoIState) -> Option<f64> {
        self.slots
            .get((state.t as usize).wrapping_sub(1))
            .and_then(|level| level.get(state))
            .map(|entry| entry.cost_to_go)
    }

    /// Flat text form: a commented header naming the instance, then one line
    /// per state carrying slot, relay ages, destination ages, the optimal
    /// action index, and the cost-to-go.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# dp-table v1").unwrap();
        out.push_str(&render_config_header(&self.cfg));
        let mut states: Vec<(&AoIState, &DpEntry)> = self
            .slots
            .iter()
            .flat_map(|level| level.iter())
            .collect();
        states.sort_by(|(a, _), (b, _)| (a.t, &a.g, &a.h).cmp(&(b.t, &b.g, &b.h)));
        for (state, entry) in states {
            writeln!(
                out,
                "{} {} {} {} {}",
                state.t,
                join_ages(&state.g),
                join_ages(&state.h),
                entry.action_index,
                entry.cost_to_go
            )
            .unwrap();
        }
        out
    }

    /// Parses the `to_text` form back, including the instance it was solved
    /// for.
    pub fn from_text(text: &str) -> Result<Self, PolicyError> {
        let (cfg, body) = parse_config_header(text, "dp-table v1")?;
        let mut slots = vec![HashMap::new(); cfg.horizon() as usize];
        for (line_number, line) in body {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 5 {
                return Err(PolicyError::TableFormat {
                    line: line_number,
                    message: format!("expected 5 fields, got {}", fields.len()),
                });
            }
            let t: u32 = parse_field(fields[0], line_number, "slot")?;
            let state = AoIState {
                t,
                g: parse_ages(fields[1], line_number)?,
                h: parse_ages(fields[2], line_number)?,
            };
            let entry = DpEntry {
                action_index: parse_field(fields[3], line_number, "action index")?,
                cost_to_go: parse_field(fields[4], line_number, "cost")?,
            };
            let level = slots
                .get_mut((t as usize).wrapping_sub(1))
                .ok_or_else(|| PolicyError::TableFormat {
                    line: line_number,
                    message: format!("slot {t} outside horizon"),
                })?;
            level.insert(state, entry);
        }
        Ok(Self { cfg, slots })
    }
}

pub(crate) fn join_ages(ages: &[u32]) -> String {
    ages.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn parse_ages(field: &str, line: usize) -> Result<Vec<u32>, PolicyError> {
    field
        .split(',')
        .map(|part| {
            part.parse().map_err(|_| PolicyError::TableFormat {
                line,
                message: format!("bad age component {part:?}"),
            })
        })
        .collect()
}

pub(crate) fn parse_field<T: std::str::FromStr>(
    field: &str,
    line: usize,
    what: &str,
) -> Result<T, PolicyError> {
    field.parse().map_err(|_| PolicyError::TableFormat {
        line,
        message: format!("bad {what} {field:?}"),
    })
}

/// Instance header shared by the table formats: one commented `key value`
/// line per config field, floats in shortest round-trip form.
pub(crate) fn render_config_header(cfg: &NetworkConfig) -> String {
    let join_probs = |probs: &[f64]| {
        probs
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut out = String::new();
    writeln!(out, "# K {}", cfg.n_sensors()).unwrap();
    writeln!(out, "# S {}", cfg.sample_size()).unwrap();
    writeln!(out, "# U {}", cfg.update_size()).unwrap();
    writeln!(out, "# T {}", cfg.horizon()).unwrap();
    writeln!(out, "# weights {}", join_probs(cfg.weights())).unwrap();
    writeln!(out, "# p {}", join_probs(cfg.sample_outage_probs())).unwrap();
    writeln!(out, "# q {}", join_probs(cfg.update_outage_probs())).unwrap();
    out
}

/// Reads the commented header produced by `render_config_header`, checking
/// the leading format tag, and returns the instance plus the remaining
/// non-comment lines with their 1-based line numbers.
pub(crate) fn parse_config_header<'a>(
    text: &'a str,
    expected_tag: &str,
) -> Result<(NetworkConfig, Vec<(usize, &'a str)>), PolicyError> {
    let mut fields: HashMap<&str, &str> = HashMap::new();
    let mut body = Vec::new();
    let mut saw_tag = false;
    for (index, raw) in text.lines().enumerate() {
        let line_number = index + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if comment == expected_tag {
                saw_tag = true;
            } else if let Some((key, value)) = comment.split_once(' ') {
                fields.insert(key.trim(), value.trim());
            }
            continue;
        }
        body.push((line_number, raw));
    }
    if !saw_tag {
        return Err(PolicyError::TableFormat {
            line: 1,
            message: format!("missing format tag {expected_tag:?}"),
        });
    }
    let get = |key: &str| {
        fields.get(key).copied().ok_or_else(|| PolicyError::TableFormat {
            line: 1,
            message: format!("header missing {key}"),
        })
    };
    let parse_probs = |field: &str| -> Result<Vec<f64>, PolicyError> {
        field
            .split(',')
            .map(|part| {
                part.parse().map_err(|_| PolicyError::TableFormat {
                    line: 1,
                    message: format!("bad header float {part:?}"),
                })
            })
            .collect()
    };
    let cfg = NetworkConfig::new(
        parse_field(get("K")?, 1, "K")?,
        parse_field(get("S")?, 1, "S")?,
        parse_field(get("U")?, 1, "U")?,
        parse_field(get("T")?, 1, "T")?,
        parse_probs(get("weights")?)?,
        parse_probs(get("p")?)?,
        parse_probs(get("q")?)?,
    )
    .map_err(|err| PolicyError::TableFormat {
        line: 1,
        message: format!("header names an invalid instance: {err}"),
    })?;
    Ok((cfg, body))
}
