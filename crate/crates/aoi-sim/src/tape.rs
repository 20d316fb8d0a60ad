//! Pregenerated channel randomness.
//!
//! Every uniform variate is a pure function of (master seed, run, slot,
//! channel, position), computed with a chained 64-bit finalizer. Because the
//! variate attaches to the position within the selected set rather than to a
//! sensor, two policies replaying the same tape face the same outage result
//! in the same selection slot, which is exactly the pairing that
//! policy-dominance comparisons need.

use aoi_core::{Action, NetworkConfig, OutageDraws};

/// Identifier of the variate derivation, recorded in output metadata so
/// archived results name the exact construction they came from.
pub const TAPE_RULE_ID: &str = "splitmix64-chain-v1";

const SAMPLE_CHANNEL: u64 = 0;
const UPDATE_CHANNEL: u64 = 1;
const POLICY_CHANNEL: u64 = 2;

fn finalize(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn chain(words: &[u64]) -> u64 {
    let mut x = 0;
    for &word in words {
        x = finalize(x ^ word);
    }
    x
}

fn unit_interval(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Seed for a policy's private decision stream, kept apart from the channel
/// variates so consuming one never shifts the other.
pub(crate) fn policy_stream_seed(master_seed: u64, run: u64, policy_slot: u64) -> u64 {
    chain(&[master_seed, run, POLICY_CHANNEL, policy_slot])
}

/// Uniform channel variates for one run, one row of positions per slot.
#[derive(Debug, Clone, PartialEq)]
pub struct OutageTape {
    sample_u: Vec<Vec<f64>>,
    update_u: Vec<Vec<f64>>,
}

impl OutageTape {
    /// Derives the full tape for `run` under `master_seed`.
    pub fn new(cfg: &NetworkConfig, master_seed: u64, run: u64) -> Self {
        let variates = |channel: u64, width: usize| {
            (1..=cfg.horizon() as u64)
                .map(|t| {
                    (0..width as u64)
                        .map(|position| {
                            unit_interval(chain(&[master_seed, run, t, channel, position]))
                        })
                        .collect()
                })
                .collect()
        };
        Self {
            sample_u: variates(SAMPLE_CHANNEL, cfg.sample_size()),
            update_u: variates(UPDATE_CHANNEL, cfg.update_size()),
        }
    }

    /// Builds a tape from explicit variates, mainly for forcing channel
    /// behavior in tests.
    pub fn from_uniforms(sample_u: Vec<Vec<f64>>, update_u: Vec<Vec<f64>>) -> Self {
        assert_eq!(sample_u.len(), update_u.len(), "slot counts must agree");
        for row in sample_u.iter().chain(&update_u) {
            assert!(
                row.iter().all(|v| (0.0..1.0).contains(v)),
                "variates must lie in [0, 1)"
            );
        }
        Self { sample_u, update_u }
    }

    /// Number of slots the tape covers.
    pub fn horizon(&self) -> u32 {
        self.sample_u.len() as u32
    }

    pub fn sample_uniform(&self, t: u32, position: usize) -> f64 {
        self.sample_u[t as usize - 1][position]
    }

    pub fn update_uniform(&self, t: u32, position: usize) -> f64 {
        self.update_u[t as usize - 1][position]
    }

    /// Outage booleans for an action in slot `t`: the variate at each
    /// position is compared against the outage probability of the sensor the
    /// action places there.
    pub fn draws_for(&self, cfg: &NetworkConfig, t: u32, action: &Action) -> OutageDraws {
        let row = |uniforms: &[f64], selected: &[usize], probs: &[f64]| {
            selected
                .iter()
                .enumerate()
                .map(|(position, &sensor)| uniforms[position] < probs[sensor])
                .collect()
        };
        OutageDraws {
            sample: row(
                &self.sample_u[t as usize - 1],
                action.sample_set(),
                cfg.sample_outage_probs(),
            ),
            update: row(
                &self.update_u[t as usize - 1],
                action.update_set(),
                cfg.update_outage_probs(),
            ),
        }
    }
}
