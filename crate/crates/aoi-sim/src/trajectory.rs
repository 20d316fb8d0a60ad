//! Recorded episodes.

use aoi_core::{Action, AoIState, CoreError, NetworkConfig, OutageDraws};

use crate::error::SimError;

/// Everything observed in one slot: the pre-transition state, the action
/// taken in it, the channel outcome, and the derived per-slot quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct SlotRecord {
    pub state: AoIState,
    pub action: Action,
    pub draws: OutageDraws,
    pub sampling_reduction: u64,
    pub update_reduction: u64,
    pub weighted_sum_g: f64,
    pub weighted_sum_h: f64,
}

/// One full episode: a record per slot 1..=T.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    cfg: NetworkConfig,
    records: Vec<SlotRecord>,
}

impl Trajectory {
    pub(crate) fn new(cfg: NetworkConfig, records: Vec<SlotRecord>) -> Self {
        Self { cfg, records }
    }

    /// Assembles a trajectory from externally produced records, e.g. parsed
    /// output or synthetic fixtures. Dimensions must match the instance;
    /// per-slot quantities are taken as given.
    pub fn from_records(
        cfg: NetworkConfig,
        records: Vec<SlotRecord>,
    ) -> Result<Self, SimError> {
        for record in &records {
            if record.state.g.len() != cfg.n_sensors() || record.state.h.len() != cfg.n_sensors()
            {
                return Err(SimError::Core(CoreError::StateSizeMismatch {
                    expected: cfg.n_sensors(),
                    got: record.state.g.len().min(record.state.h.len()),
                }));
            }
        }
        Ok(Self { cfg, records })
    }

    pub fn cfg(&self) -> &NetworkConfig {
        &self.cfg
    }

    pub fn records(&self) -> &[SlotRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Time-averaged weighted destination age over the episode.
    pub fn value(&self) -> f64 {
        let total: f64 = self.records.iter().map(|r| r.weighted_sum_h).sum();
        total / self.records.len() as f64
    }

    /// Unweighted destination age totals per slot.
    pub fn sum_h_per_slot(&self) -> Vec<u64> {
        self.records.iter().map(|r| r.state.sum_h()).collect()
    }

    /// Unweighted relay age totals per slot.
    pub fn sum_g_per_slot(&self) -> Vec<u64> {
        self.records.iter().map(|r| r.state.sum_g()).collect()
    }
}
