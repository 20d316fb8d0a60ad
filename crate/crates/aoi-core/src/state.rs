use crate::config::NetworkConfig;

/// Per-sensor ages at one slot.
///
/// `g[k]` counts slots since the relay last received a sample from sensor
/// `k`; `h[k]` counts slots since the destination last received an update
/// originating at sensor `k`. Both are at least 1: even an immediate delivery
/// is one slot old by the time it lands. `t` is the 1-based slot index the
/// ages belong to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AoIState {
    pub t: u32,
    pub g: Vec<u32>,
    pub h: Vec<u32>,
}

impl AoIState {
    /// State at slot 1: every age starts at its floor of 1.
    pub fn initial(cfg: &NetworkConfig) -> Self {
        Self {
            t: 1,
            g: vec![1; cfg.n_sensors()],
            h: vec![1; cfg.n_sensors()],
        }
    }

    pub fn n_sensors(&self) -> usize {
        self.g.len()
    }

    /// Sum of relay ages at this slot.
    pub fn sum_g(&self) -> u64 {
        self.g.iter().map(|&v| u64::from(v)).sum()
    }

    /// Sum of destination ages at this slot.
    pub fn sum_h(&self) -> u64 {
        self.h.iter().map(|&v| u64::from(v)).sum()
    }
}
