//! Slot transition and the selection-gain quantities derived from it.
//!
//! Within a slot, sampling and updating read the same pre-slot state: a
//! successful sample resets the relay age to 1, while a successful update
//! lands at the destination with the relay's pre-slot age plus one slot of
//! delivery delay. Everything not refreshed ages by one. The reductions
//! measure how much total age a selection removes relative to letting every
//! sensor age: sampling removes the selected relay ages, updating removes the
//! selected relay-to-destination gaps.

use crate::action::{Action, OutageDraws};
use crate::config::NetworkConfig;
use crate::error::CoreError;
use crate::state::AoIState;

/// Which node's ages a quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Relay,
    Destination,
}

/// Advances the ages by one slot under `action` and the realized `draws`.
///
/// Both transitions read the slot-`t` state: a sensor that is sampled and
/// updated in the same slot delivers its previous relay age to the
/// destination, not the just-refreshed one. The input state is untouched;
/// the result is the slot `t + 1` state.
pub fn step(
    cfg: &NetworkConfig,
    state: &AoIState,
    action: &Action,
    draws: &OutageDraws,
) -> Result<AoIState, CoreError> {
    let k = cfg.n_sensors();
    if state.n_sensors() != k || state.h.len() != k {
        return Err(CoreError::StateSizeMismatch {
            expected: k,
            got: state.n_sensors(),
        });
    }
    if state.t > cfg.horizon() {
        return Err(CoreError::PastHorizon {
            t: state.t,
            horizon: cfg.horizon(),
        });
    }
    validate_selection(cfg, action)?;
    if draws.sample.len() != cfg.sample_size() {
        return Err(CoreError::DrawLengthMismatch {
            channel: "sample",
            expected: cfg.sample_size(),
            got: draws.sample.len(),
        });
    }
    if draws.update.len() != cfg.update_size() {
        return Err(CoreError::DrawLengthMismatch {
            channel: "update",
            expected: cfg.update_size(),
            got: draws.update.len(),
        });
    }

    let mut g: Vec<u32> = state.g.iter().map(|&v| v + 1).collect();
    let mut h: Vec<u32> = state.h.iter().map(|&v| v + 1).collect();
    for (rank, &sensor) in action.sample_set().iter().enumerate() {
        if !draws.sample[rank] {
            g[sensor] = 1;
        }
    }
    for (rank, &sensor) in action.update_set().iter().enumerate() {
        if !draws.update[rank] {
            h[sensor] = state.g[sensor] + 1;
        }
    }
    Ok(AoIState {
        t: state.t + 1,
        g,
        h,
    })
}

fn validate_selection(cfg: &NetworkConfig, action: &Action) -> Result<(), CoreError> {
    let check = |name: &'static str, set: &[usize], expected: usize| -> Result<(), CoreError> {
        if set.len() != expected {
            return Err(CoreError::WrongSelectionSize {
                set: name,
                expected,
                got: set.len(),
            });
        }
        for window in set.windows(2) {
            if window[0] >= window[1] {
                return Err(CoreError::DuplicateIndex {
                    set: name,
                    index: window[1],
                });
            }
        }
        if let Some(&last) = set.last() {
            if last >= cfg.n_sensors() {
                return Err(CoreError::IndexOutOfRange {
                    index: last,
                    k: cfg.n_sensors(),
                });
            }
        }
        Ok(())
    };
    check("sample set", action.sample_set(), cfg.sample_size())?;
    check("update set", action.update_set(), cfg.update_size())
}

/// Total relay age removed by sampling `sample_set` in this slot, assuming
/// the transmissions succeed: the sum of the selected sensors' `g` values.
///
/// Any subset of sensors is accepted, including the empty set.
pub fn sampling_reduction(state: &AoIState, sample_set: &[usize]) -> Result<u64, CoreError> {
    subset_sum(state, sample_set, |state, sensor| {
        u64::from(state.g[sensor])
    })
}

/// Total destination age removed by updating `update_set` in this slot,
/// assuming success: the sum of the selected sensors' `h - g` gaps.
///
/// Expects `h >= g` per sensor, which holds on every state the dynamics can
/// produce; a violated gap indicates a hand-built state and panics.
pub fn update_reduction(state: &AoIState, update_set: &[usize]) -> Result<u64, CoreError> {
    subset_sum(state, update_set, |state, sensor| {
        let (g, h) = (state.g[sensor], state.h[sensor]);
        assert!(
            h >= g,
            "destination age below relay age for sensor {sensor}: h={h} g={g}"
        );
        u64::from(h - g)
    })
}

fn subset_sum(
    state: &AoIState,
    set: &[usize],
    value: impl Fn(&AoIState, usize) -> u64,
) -> Result<u64, CoreError> {
    let k = state.n_sensors();
    let mut seen = vec![false; k];
    let mut total = 0u64;
    for &sensor in set {
        if sensor >= k {
            return Err(CoreError::IndexOutOfRange { index: sensor, k });
        }
        if seen[sensor] {
            return Err(CoreError::DuplicateIndex {
                set: "selection",
                index: sensor,
            });
        }
        seen[sensor] = true;
        total += value(state, sensor);
    }
    Ok(total)
}

/// Every outage outcome of `action` that has positive probability, with its
/// probability.
///
/// Outcomes are enumerated in a fixed order: the sample flags form the low
/// bits and the update flags the high bits of a combined counter, with bit
/// `i` of each group carrying the outage flag of the `i`-th smallest selected
/// index. Links with zero outage probability contribute no branching, so an
/// errorless instance yields the single all-success outcome. Probabilities
/// sum to 1 up to rounding.
pub fn outage_patterns(cfg: &NetworkConfig, action: &Action) -> Vec<(OutageDraws, f64)> {
    let sample_probs: Vec<f64> = action
        .sample_set()
        .iter()
        .map(|&k| cfg.sample_outage_prob(k))
        .collect();
    let update_probs: Vec<f64> = action
        .update_set()
        .iter()
        .map(|&k| cfg.update_outage_prob(k))
        .collect();
    let s = sample_probs.len();
    let u = update_probs.len();
    let mut patterns = Vec::new();
    for mask in 0u32..(1u32 << (s + u)) {
        let mut probability = 1.0;
        let mut sample = vec![false; s];
        let mut update = vec![false; u];
        for (rank, flag) in sample.iter_mut().enumerate() {
            let outage = mask & (1 << rank) != 0;
            probability *= if outage {
                sample_probs[rank]
            } else {
                1.0 - sample_probs[rank]
            };
            *flag = outage;
        }
        for (rank, flag) in update.iter_mut().enumerate() {
            let outage = mask & (1 << (s + rank)) != 0;
            probability *= if outage {
                update_probs[rank]
            } else {
                1.0 - update_probs[rank]
            };
            *flag = outage;
        }
        if probability > 0.0 {
            patterns.push((OutageDraws::new(sample, update), probability));
        }
    }
    patterns
}

/// Weighted age total at one node: `sum_k weights[k] * age[k]`.
///
/// `weights` must have one entry per sensor.
pub fn weighted_sum(state: &AoIState, weights: &[f64], node: Node) -> f64 {
    assert_eq!(
        weights.len(),
        state.n_sensors(),
        "weights must have one entry per sensor"
    );
    let ages = match node {
        Node::Relay => &state.g,
        Node::Destination => &state.h,
    };
    ages.iter()
        .zip(weights)
        .map(|(&age, &w)| w * f64::from(age))
        .sum()
}
