//! Subcommand surface and dispatch.
//!
//! Data (CSV, check verdicts, solver summaries) goes to the configured
//! output file or stdout; run metadata (echoed configuration, tape rule,
//! training notes, warnings) always goes to stderr as `# `-prefixed lines,
//! so piping stdout stays clean.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use aoi_core::{CoreError, NetworkConfig};
use aoi_policies::{
    solve_backward_induction, train_q_learning, PolicyError, PolicySpec, QLearningConfig,
    DEFAULT_STATE_CAP,
};
use aoi_sim::{
    exact_expected_value, run_coupled, run_episode, run_recorded, CoupledReport, OutageTape,
    SimError, Trajectory, DEFAULT_PATH_CAP, TAPE_RULE_ID,
};
use aoi_theory::{
    check_optimality_conditions, errorless_identity_sweep, instance_label, lossy_ordering_sweep,
    min_sum_g, min_sum_h, update_drain_time, CheckReport, TheoryError, Violation,
    DEFAULT_SEARCH_BUDGET,
};
use clap::{Parser, Subcommand};

use crate::config::{render_config, ExperimentConfig, PolicyChoice};
use crate::error::CliError;
use crate::output::{
    averages_csv, check_lines, coupled_csv, summary_csv, trace_series_csv, trajectory_csv,
    write_atomic,
};
use crate::presets::{preset, PresetKind, PRESET_NAMES};

#[derive(Debug, Parser)]
#[command(
    name = "aoi-relay",
    version,
    about = "Age-of-information scheduling over a relay: simulate, solve, verify"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo runs for every configured policy on shared outage tapes
    Simulate {
        /// Path to a key=value configuration file
        config: PathBuf,
        /// Also record a slot-by-sensor trace CSV (single-policy configs only)
        #[arg(long)]
        trajectories: Option<PathBuf>,
    },
    /// Per-run paired comparison of the configured policies
    Coupled {
        /// Path to a key=value configuration file
        config: PathBuf,
    },
    /// Exact expected values by exhaustive outcome enumeration
    Exact {
        /// Path to a key=value configuration file
        config: PathBuf,
    },
    /// Solve the finite-horizon optimal policy by backward induction
    SolveDp {
        /// Path to a key=value configuration file
        config: PathBuf,
        /// Write the solved table to this file
        #[arg(long)]
        table_out: Option<PathBuf>,
    },
    /// Train the tabular learner and report its greedy evaluation
    TrainQ {
        /// Path to a key=value configuration file
        config: PathBuf,
        /// Training episodes
        #[arg(long)]
        episodes: Option<usize>,
        /// Learning rate
        #[arg(long)]
        alpha: Option<f64>,
        /// Exploration rate during training
        #[arg(long)]
        epsilon: Option<f64>,
        /// Age clip cap for table keys
        #[arg(long)]
        clip: Option<u32>,
        /// Evaluate the greedy policy every this many episodes
        #[arg(long)]
        eval_every: Option<usize>,
        /// Write the learned table to this file
        #[arg(long)]
        table_out: Option<PathBuf>,
        /// Write the learning curve CSV to this file
        #[arg(long)]
        curve_out: Option<PathBuf>,
    },
    /// Run the structural self-checks, one verdict line per check
    Verify {
        /// Randomized lossy instances for the age-ordering check
        #[arg(long, default_value_t = 1000)]
        ordering_instances: usize,
        /// Randomized errorless instances for the accounting identities
        #[arg(long, default_value_t = 500)]
        identity_instances: usize,
        /// Seed for the randomized sweeps
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the verdict lines to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run a pinned reference experiment by name
    Reproduce {
        /// Preset name (see the error message for the list)
        preset: String,
        /// Write the result CSV to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Simulate {
            config,
            trajectories,
        } => {
            let config = load_config(&config)?;
            run_simulation(&config, config.coupled, trajectories.as_deref())
        }
        Command::Coupled { config } => {
            let config = load_config(&config)?;
            run_simulation(&config, true, None)
        }
        Command::Exact { config } => run_exact(&load_config(&config)?),
        Command::SolveDp { config, table_out } => {
            run_solve_dp(&load_config(&config)?, table_out.as_deref())
        }
        Command::TrainQ {
            config,
            episodes,
            alpha,
            epsilon,
            clip,
            eval_every,
            table_out,
            curve_out,
        } => {
            let overrides = TrainOverrides {
                episodes,
                alpha,
                epsilon,
                clip,
                eval_every,
            };
            run_train_q(
                &load_config(&config)?,
                &overrides,
                table_out.as_deref(),
                curve_out.as_deref(),
            )
        }
        Command::Verify {
            ordering_instances,
            identity_instances,
            seed,
            out,
        } => run_verify(ordering_instances, identity_instances, seed, out.as_deref()),
        Command::Reproduce { preset, out } => run_reproduce(&preset, out.as_deref()),
    }
}

fn note(line: impl AsRef<str>) {
    eprintln!("# {}", line.as_ref());
}

fn emit(destination: Option<&Path>, content: &str) -> Result<(), CliError> {
    match destination {
        Some(path) => write_atomic(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_config(path: &Path) -> Result<ExperimentConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| CliError::io(format!("reading config {}", path.display()), err))?;
    crate::config::parse_config(&text)
}

fn core_to_cli(err: CoreError) -> CliError {
    CliError::Usage(err.to_string())
}

fn sim_to_cli(err: SimError) -> CliError {
    match err {
        SimError::PathBudgetExceeded { .. } => CliError::Budget(err.to_string()),
        SimError::Policy(inner) => policy_to_cli(inner),
        other => CliError::Usage(other.to_string()),
    }
}

fn policy_to_cli(err: PolicyError) -> CliError {
    match err {
        PolicyError::StateCapExceeded { .. } | PolicyError::SearchBudgetExceeded { .. } => {
            CliError::Budget(err.to_string())
        }
        other => CliError::Usage(other.to_string()),
    }
}

fn theory_to_cli(err: TheoryError) -> CliError {
    match err {
        TheoryError::SearchBudgetExceeded { .. } => CliError::Budget(err.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

fn effective_clip(q_cfg: &QLearningConfig, horizon: u32) -> u32 {
    q_cfg.clip_cap.unwrap_or_else(|| horizon.min(12))
}

/// Instantiates the configured policies, solving or training where needed.
fn build_policies(
    config: &ExperimentConfig,
    q_cfg: &QLearningConfig,
) -> Result<Vec<PolicySpec>, CliError> {
    config
        .policies
        .iter()
        .map(|choice| match choice {
            PolicyChoice::Greedy => Ok(PolicySpec::Greedy),
            PolicyChoice::Random => Ok(PolicySpec::UniformRandom),
            PolicyChoice::Dp => {
                note("solving the optimal policy by backward induction");
                let table = solve_backward_induction(&config.network, DEFAULT_STATE_CAP)
                    .map_err(policy_to_cli)?;
                Ok(PolicySpec::DpOptimal(Arc::new(table)))
            }
            PolicyChoice::Q => {
                note(format!(
                    "training the tabular learner: episodes={}, learning-rate={}, \
                     exploration-rate={}, clip={}, seed={}",
                    q_cfg.episodes,
                    q_cfg.learning_rate,
                    q_cfg.exploration_rate,
                    effective_clip(q_cfg, config.network.horizon()),
                    config.seed,
                ));
                let outcome = train_q_learning(&config.network, q_cfg, config.seed);
                Ok(PolicySpec::QGreedy {
                    table: Arc::new(outcome.table),
                    exploration_rate: 0.0,
                })
            }
        })
        .collect()
}

fn emit_run_metadata(config: &ExperimentConfig) {
    note(format!("config {}", render_config(config)));
    note(format!("outage-tape {TAPE_RULE_ID}"));
}

fn emit_pairing_metadata(report: &CoupledReport) {
    let first = &report.summaries[0].policy_id;
    let n_runs = report.per_run_values[0].len();
    let slots = report.per_run_slot_sum_h[0]
        .first()
        .map_or(0, |run| run.len());
    for (index, summary) in report.summaries.iter().enumerate() {
        note(format!(
            "value-mean {} {}",
            summary.policy_id, summary.value_mean
        ));
        if index == 0 {
            continue;
        }
        let value_crossings = report.paired_diffs_vs_first[index]
            .iter()
            .filter(|diff| **diff < 0.0)
            .count();
        note(format!(
            "paired value-crossings {}-vs-{} {}/{}",
            summary.policy_id, first, value_crossings, n_runs
        ));
        let slot_crossings = report.dominance_violations(index, 0).len();
        note(format!(
            "per-slot sum_h crossings {}-vs-{} {}/{}",
            summary.policy_id,
            first,
            slot_crossings,
            n_runs * slots
        ));
    }
}

fn run_simulation(
    config: &ExperimentConfig,
    paired: bool,
    trajectories: Option<&Path>,
) -> Result<i32, CliError> {
    if trajectories.is_some() && config.policies.len() != 1 {
        return Err(CliError::Usage(
            "trajectory recording traces a single policy; configure exactly one".into(),
        ));
    }
    emit_run_metadata(config);
    let q_cfg = QLearningConfig::default();
    let policies = build_policies(config, &q_cfg)?;
    let report = run_coupled(&config.network, &policies, config.n_runs, config.seed)
        .map_err(sim_to_cli)?;
    for warning in &report.warnings {
        note(format!("warning {warning}"));
    }
    if let Some(path) = trajectories {
        let runs = run_recorded(&config.network, &policies[0], config.n_runs, config.seed, 0)
            .map_err(sim_to_cli)?;
        write_atomic(path, &trajectory_csv(&runs))?;
        note(format!("trajectories {}", path.display()));
    }
    if paired {
        emit_pairing_metadata(&report);
        emit(config.out.as_deref(), &coupled_csv(&report))?;
    } else {
        emit(config.out.as_deref(), &summary_csv(&report.summaries))?;
    }
    Ok(0)
}

fn run_exact(config: &ExperimentConfig) -> Result<i32, CliError> {
    emit_run_metadata(config);
    let q_cfg = QLearningConfig::default();
    let policies = build_policies(config, &q_cfg)?;
    let mut csv = String::from("policy,value\n");
    for spec in &policies {
        let value =
            exact_expected_value(&config.network, spec, DEFAULT_PATH_CAP).map_err(sim_to_cli)?;
        csv.push_str(&format!("{},{}\n", spec.id(), value));
    }
    emit(config.out.as_deref(), &csv)?;
    Ok(0)
}

fn run_solve_dp(config: &ExperimentConfig, table_out: Option<&Path>) -> Result<i32, CliError> {
    emit_run_metadata(config);
    let table =
        solve_backward_induction(&config.network, DEFAULT_STATE_CAP).map_err(policy_to_cli)?;
    println!("states = {}", table.n_states());
    println!("optimal_value = {}", table.optimal_value());
    if let Some(path) = table_out {
        write_atomic(path, &table.to_text())?;
        note(format!("table {}", path.display()));
    }
    Ok(0)
}

struct TrainOverrides {
    episodes: Option<usize>,
    alpha: Option<f64>,
    epsilon: Option<f64>,
    clip: Option<u32>,
    eval_every: Option<usize>,
}

fn run_train_q(
    config: &ExperimentConfig,
    overrides: &TrainOverrides,
    table_out: Option<&Path>,
    curve_out: Option<&Path>,
) -> Result<i32, CliError> {
    let mut q_cfg = QLearningConfig::default();
    if let Some(episodes) = overrides.episodes {
        q_cfg.episodes = episodes;
    }
    if let Some(alpha) = overrides.alpha {
        q_cfg.learning_rate = alpha;
    }
    if let Some(epsilon) = overrides.epsilon {
        q_cfg.exploration_rate = epsilon;
    }
    if let Some(clip) = overrides.clip {
        q_cfg.clip_cap = Some(clip);
    }
    if let Some(eval_every) = overrides.eval_every {
        q_cfg.eval_every = eval_every;
    }
    if curve_out.is_some() && q_cfg.eval_every == 0 {
        return Err(CliError::Usage(
            "a learning curve needs --eval-every to set the evaluation period".into(),
        ));
    }
    emit_run_metadata(config);
    note(format!(
        "training the tabular learner: episodes={}, learning-rate={}, exploration-rate={}, \
         clip={}, seed={}",
        q_cfg.episodes,
        q_cfg.learning_rate,
        q_cfg.exploration_rate,
        effective_clip(&q_cfg, config.network.horizon()),
        config.seed,
    ));
    let outcome = train_q_learning(&config.network, &q_cfg, config.seed);
    let greedy_value = aoi_policies::evaluate_greedy_table_policy(
        &config.network,
        &outcome.table,
        config.n_runs.max(1000),
        config.seed,
    );
    println!("states = {}", outcome.table.n_states());
    println!("greedy_value = {greedy_value}");
    if let Some(path) = table_out {
        write_atomic(path, &outcome.table.to_text())?;
        note(format!("table {}", path.display()));
    }
    if let Some(path) = curve_out {
        let mut csv = String::from("episode,value\n");
        for point in &outcome.curve {
            csv.push_str(&format!("{},{}\n", point.episode, point.value));
        }
        write_atomic(path, &csv)?;
        note(format!("curve {}", path.display()));
    }
    Ok(0)
}

fn greedy_errorless_trajectory(
    k: usize,
    s: usize,
    horizon: u32,
) -> Result<(NetworkConfig, Trajectory), CliError> {
    let cfg = NetworkConfig::errorless_symmetric(k, s, s, horizon).map_err(core_to_cli)?;
    let tape = OutageTape::new(&cfg, 1, 0);
    let trajectory = run_episode(&cfg, &PolicySpec::Greedy, &tape, 0).map_err(sim_to_cli)?;
    Ok((cfg, trajectory))
}

/// Pins the greedy errorless five-sensor trace to its frozen age totals.
fn reference_trace_report() -> Result<CheckReport, CliError> {
    let (cfg, trajectory) = greedy_errorless_trajectory(5, 3, 6)?;
    let instance = instance_label(&cfg);
    let expected_g: [u64; 6] = [5, 7, 7, 7, 7, 7];
    let expected_h: [u64; 6] = [5, 10, 12, 12, 12, 12];
    let sum_g = trajectory.sum_g_per_slot();
    let sum_h = trajectory.sum_h_per_slot();
    for t in 0..6 {
        for (observed, frozen) in [(sum_g[t], expected_g[t]), (sum_h[t], expected_h[t])] {
            if observed != frozen {
                return Ok(CheckReport::fail(
                    "reference-trace",
                    instance,
                    Violation {
                        t: t as u32 + 1,
                        k: None,
                        lhs: observed,
                        rhs: frozen,
                    },
                ));
            }
        }
    }
    Ok(CheckReport::pass("reference-trace", instance))
}

/// Greedy rollouts must hit the closed-form minimum age sums on every
/// errorless symmetric instance, through the ramp and into steady state.
fn closed_form_agreement_reports() -> Result<Vec<CheckReport>, CliError> {
    let mut reports = Vec::new();
    for k in 2..=8u64 {
        for s in 1..k {
            let drain = update_drain_time(k, s).map_err(theory_to_cli)?;
            let horizon = (3 * drain) as u32;
            let (cfg, trajectory) =
                greedy_errorless_trajectory(k as usize, s as usize, horizon)?;
            let instance = instance_label(&cfg);
            let sum_g = trajectory.sum_g_per_slot();
            let sum_h = trajectory.sum_h_per_slot();
            let mut violation = None;
            'slots: for t in 1..=u64::from(horizon) {
                let index = (t - 1) as usize;
                let pairs = [
                    (sum_g[index], min_sum_g(k, s, t).map_err(theory_to_cli)?),
                    (sum_h[index], min_sum_h(k, s, t).map_err(theory_to_cli)?),
                ];
                for (observed, predicted) in pairs {
                    if observed != predicted {
                        violation = Some(Violation {
                            t: t as u32,
                            k: None,
                            lhs: observed,
                            rhs: predicted,
                        });
                        break 'slots;
                    }
                }
            }
            reports.push(match violation {
                None => CheckReport::pass("closed-form-agreement", instance),
                Some(violation) => {
                    CheckReport::fail("closed-form-agreement", instance, violation)
                }
            });
        }
    }
    Ok(reports)
}

fn optimality_report(k: usize, s: usize, horizon: u32) -> Result<CheckReport, CliError> {
    let (cfg, trajectory) = greedy_errorless_trajectory(k, s, horizon)?;
    check_optimality_conditions(&cfg, &trajectory, DEFAULT_SEARCH_BUDGET).map_err(theory_to_cli)
}

fn run_verify(
    ordering_instances: usize,
    identity_instances: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<i32, CliError> {
    let mut reports = vec![reference_trace_report()?];
    reports.extend(closed_form_agreement_reports()?);
    for (k, s, horizon) in [(3, 1, 4), (4, 2, 4)] {
        reports.push(optimality_report(k, s, horizon)?);
    }
    reports.extend(lossy_ordering_sweep(ordering_instances, seed).reports);
    reports.extend(errorless_identity_sweep(identity_instances, seed).reports);
    emit(out, &check_lines(&reports))?;
    let failed = reports.iter().filter(|report| !report.passed()).count();
    note(format!("{} checks, {} failed", reports.len(), failed));
    Ok(if failed > 0 { 2 } else { 0 })
}

fn run_reproduce(name: &str, out: Option<&Path>) -> Result<i32, CliError> {
    let Some(preset) = preset(name) else {
        return Err(CliError::Usage(format!(
            "unknown preset \"{name}\"; expected one of: {}",
            PRESET_NAMES.join(", ")
        )));
    };
    note(format!("preset {}: {}", preset.name, preset.description));
    for line in preset.notes {
        note(line);
    }
    let config = &preset.config;
    emit_run_metadata(config);
    let q_cfg = preset.q_learning.clone().unwrap_or_default();
    match preset.kind {
        PresetKind::Trace => {
            let policies = build_policies(config, &q_cfg)?;
            let runs = run_recorded(&config.network, &policies[0], 1, config.seed, 0)
                .map_err(sim_to_cli)?;
            emit(out, &trace_series_csv(&runs[0]))?;
        }
        PresetKind::SlotSeries | PresetKind::Averages => {
            let policies = build_policies(config, &q_cfg)?;
            let report = run_coupled(&config.network, &policies, config.n_runs, config.seed)
                .map_err(sim_to_cli)?;
            for warning in &report.warnings {
                note(format!("warning {warning}"));
            }
            let csv = if preset.kind == PresetKind::SlotSeries {
                summary_csv(&report.summaries)
            } else {
                averages_csv(&report.summaries)
            };
            emit(out, &csv)?;
        }
    }
    Ok(0)
}
