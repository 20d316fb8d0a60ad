use std::fmt;

use crate::combinatorics::{binomial, combination_rank, combination_unrank};
use crate::config::NetworkConfig;
use crate::error::CoreError;

/// One slot's selection: which sensors the relay samples and which sensors'
/// updates it forwards to the destination.
///
/// Both sets are stored sorted ascending with 0-based sensor indices. The
/// `Display` form prints 1-based indices, matching how sensors are labelled
/// in configuration files and CSV output.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Action {
    sample: Vec<usize>,
    update: Vec<usize>,
}

impl Action {
    /// Validates cardinalities against the config, index ranges, and
    /// duplicates. Input order does not matter; sets are stored sorted.
    pub fn new(
        cfg: &NetworkConfig,
        mut sample: Vec<usize>,
        mut update: Vec<usize>,
    ) -> Result<Self, CoreError> {
        sample.sort_unstable();
        update.sort_unstable();
        validate_set("sample set", &sample, cfg.sample_size(), cfg.n_sensors())?;
        validate_set("update set", &update, cfg.update_size(), cfg.n_sensors())?;
        Ok(Self { sample, update })
    }

    /// Wraps sets that are already sorted, deduplicated, in range, and of the
    /// right cardinality. Callers are expected to guarantee all of that; the
    /// debug build asserts it.
    pub fn from_sorted_unchecked(sample: Vec<usize>, update: Vec<usize>) -> Self {
        debug_assert!(sample.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(update.windows(2).all(|w| w[0] < w[1]));
        Self { sample, update }
    }

    /// Sampled sensors, sorted ascending, 0-based.
    pub fn sample_set(&self) -> &[usize] {
        &self.sample
    }

    /// Updated sensors, sorted ascending, 0-based.
    pub fn update_set(&self) -> &[usize] {
        &self.update
    }

    pub fn samples(&self, index: usize) -> bool {
        self.sample.binary_search(&index).is_ok()
    }

    pub fn updates(&self, index: usize) -> bool {
        self.update.binary_search(&index).is_ok()
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based = |set: &[usize]| {
            set.iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "sample={{{}}} update={{{}}}",
            one_based(&self.sample),
            one_based(&self.update)
        )
    }
}

fn validate_set(
    name: &'static str,
    sorted: &[usize],
    expected: usize,
    k: usize,
) -> Result<(), CoreError> {
    if sorted.len() != expected {
        return Err(CoreError::WrongSelectionSize {
            set: name,
            expected,
            got: sorted.len(),
        });
    }
    for window in sorted.windows(2) {
        if window[0] == window[1] {
            return Err(CoreError::DuplicateIndex {
                set: name,
                index: window[0],
            });
        }
    }
    if let Some(&last) = sorted.last() {
        if last >= k {
            return Err(CoreError::IndexOutOfRange { index: last, k });
        }
    }
    Ok(())
}

/// Outage outcomes for one slot's transmissions.
///
/// `sample[i]` is the outage flag for the `i`-th smallest sampled sensor
/// index, and `update[i]` likewise for the update set, so the flags attach to
/// positions within the sorted selection rather than to sensor identities.
/// `true` means the transmission was lost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutageDraws {
    pub sample: Vec<bool>,
    pub update: Vec<bool>,
}

impl OutageDraws {
    pub fn new(sample: Vec<bool>, update: Vec<bool>) -> Self {
        Self { sample, update }
    }

    /// Every transmission succeeds.
    pub fn none(cfg: &NetworkConfig) -> Self {
        Self {
            sample: vec![false; cfg.sample_size()],
            update: vec![false; cfg.update_size()],
        }
    }

    /// Every transmission is lost.
    pub fn all(cfg: &NetworkConfig) -> Self {
        Self {
            sample: vec![true; cfg.sample_size()],
            update: vec![true; cfg.update_size()],
        }
    }
}

/// The feasible actions of an instance: every way to pick `S` of `K` sensors
/// to sample crossed with every way to pick `U` of `K` to update.
///
/// Actions are ordered lexicographically by sorted sample set, then sorted
/// update set, and addressed by a dense index in `0..len()`. The order is
/// stable across runs and platforms; uniform draws, tabular policies, and
/// exhaustive searches all share it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSpace {
    k: usize,
    s: usize,
    u: usize,
    n_sample_sets: u64,
    n_update_sets: u64,
}

/// Enumerates the feasible actions of `cfg`.
pub fn feasible_actions(cfg: &NetworkConfig) -> ActionSpace {
    let k = cfg.n_sensors();
    let s = cfg.sample_size();
    let u = cfg.update_size();
    ActionSpace {
        k,
        s,
        u,
        n_sample_sets: binomial(k, s),
        n_update_sets: binomial(k, u),
    }
}

impl ActionSpace {
    /// Total number of feasible actions.
    pub fn len(&self) -> u64 {
        self.n_sample_sets * self.n_update_sets
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Action at a dense index. Panics when `index >= len()`.
    pub fn action(&self, index: u64) -> Action {
        assert!(
            index < self.len(),
            "action index {index} out of range for {} actions",
            self.len()
        );
        let sample_rank = index / self.n_update_sets;
        let update_rank = index % self.n_update_sets;
        Action::from_sorted_unchecked(
            combination_unrank(self.k, self.s, sample_rank),
            combination_unrank(self.k, self.u, update_rank),
        )
    }

    /// Dense index of an action produced for the same instance.
    pub fn index_of(&self, action: &Action) -> u64 {
        let sample_rank = combination_rank(self.k, action.sample_set());
        let update_rank = combination_rank(self.k, action.update_set());
        sample_rank * self.n_update_sets + update_rank
    }

    /// All actions in index order.
    pub fn iter(&self) -> impl Iterator<Item = Action> + '_ {
        (0..self.len()).map(|index| self.action(index))
    }
}
