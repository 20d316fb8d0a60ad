//! Canned experiment setups behind `reproduce`.
//!
//! Each preset pins a full configuration (instance, policies, run count,
//! seed) so the published reference results come out of a single command.
//! Presets that include the learned policy also pin its training
//! hyperparameters; the `notes` travel to stderr as run metadata.

use aoi_policies::QLearningConfig;

use crate::config::{parse_config, ExperimentConfig};

/// What the preset's output table looks like.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetKind {
    /// Transposed single-run trace: one row per series, one column per slot.
    Trace,
    /// Per-slot mean age curves across policies.
    SlotSeries,
    /// One value row per policy.
    Averages,
}

/// A named, fully pinned experiment.
#[derive(Debug, Clone)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub kind: PresetKind,
    pub config: ExperimentConfig,
    pub q_learning: Option<QLearningConfig>,
    pub notes: &'static [&'static str],
}

pub const PRESET_NAMES: [&str; 7] = [
    "table1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7",
];

fn preset_q_config() -> QLearningConfig {
    QLearningConfig {
        episodes: 100_000,
        learning_rate: 0.1,
        exploration_rate: 0.1,
        clip_cap: Some(2),
        eval_every: 0,
        eval_runs: 1,
    }
}

const LEARNED_POLICY_NOTE: &str = "the q policy (alias dqn) is a clipped-state tabular \
     action-value learner trained on this exact instance before the runs; neural function \
     approximation is deliberately not used";

fn pinned(text: &str) -> ExperimentConfig {
    parse_config(text).expect("preset configurations are fixed and valid")
}

/// Looks up a preset by name.
pub fn preset(name: &str) -> Option<Preset> {
    let preset = match name {
        "table1" => Preset {
            name: "table1",
            description: "single greedy errorless run, slot-by-slot age trace",
            kind: PresetKind::Trace,
            config: pinned("K=5 S=3 U=3 T=6 policies=greedy n_runs=1 seed=1"),
            q_learning: None,
            notes: &[],
        },
        "fig2" => Preset {
            name: "fig2",
            description: "errorless per-slot mean ages, greedy vs random",
            kind: PresetKind::SlotSeries,
            config: pinned("K=5 S=3 U=3 T=20 policies=greedy,random n_runs=10000 seed=1"),
            q_learning: None,
            notes: &[],
        },
        "fig3" => Preset {
            name: "fig3",
            description: "errorless average age, greedy vs learned vs random",
            kind: PresetKind::Averages,
            config: pinned("K=5 S=3 U=3 T=20 policies=greedy,q,random n_runs=10000 seed=1"),
            q_learning: Some(preset_q_config()),
            notes: &[LEARNED_POLICY_NOTE],
        },
        "fig4" => Preset {
            name: "fig4",
            description: "symmetric lossy per-slot mean ages, greedy vs random",
            kind: PresetKind::SlotSeries,
            config: pinned(
                "K=5 S=3 U=3 T=20 p=0.1 q=0.1 policies=greedy,random n_runs=10000 seed=1",
            ),
            q_learning: None,
            notes: &[],
        },
        "fig5" => Preset {
            name: "fig5",
            description: "symmetric lossy average age, greedy vs learned vs random",
            kind: PresetKind::Averages,
            config: pinned(
                "K=5 S=3 U=3 T=20 p=0.1 q=0.1 policies=greedy,q,random n_runs=10000 seed=1",
            ),
            q_learning: Some(preset_q_config()),
            notes: &[LEARNED_POLICY_NOTE],
        },
        "fig6" => Preset {
            name: "fig6",
            description: "weighted asymmetric per-slot mean ages, greedy vs random",
            kind: PresetKind::SlotSeries,
            config: pinned(
                "K=5 S=3 U=3 T=20 weights=0.5,0.3,0.2,0.05,0.05 p=0.1,0.1,0.2,0.2,0.3 \
                 q=0.3,0.2,0.2,0.1,0.1 policies=greedy,random n_runs=10000 seed=1",
            ),
            q_learning: None,
            notes: &[],
        },
        "fig7" => Preset {
            name: "fig7",
            description: "weighted asymmetric average age, greedy vs learned vs random",
            kind: PresetKind::Averages,
            config: pinned(
                "K=5 S=3 U=3 T=20 weights=0.5,0.3,0.2,0.05,0.05 p=0.1,0.1,0.2,0.2,0.3 \
                 q=0.3,0.2,0.2,0.1,0.1 policies=greedy,q,random n_runs=10000 seed=1",
            ),
            q_learning: Some(preset_q_config()),
            notes: &[LEARNED_POLICY_NOTE],
        },
        _ => return None,
    };
    Some(preset)
}
