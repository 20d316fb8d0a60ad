//! CSV rendering and atomic file writes.
//!
//! Every renderer returns a complete string with LF line endings and a
//! trailing newline; floats are printed with the shortest round-trip
//! representation so identical inputs always produce identical bytes.
//! `write_atomic` stages content in a sibling temp file and renames it into
//! place, so a failed command never leaves a partial output behind.

use std::io::Write as _;
use std::path::Path;

use aoi_sim::{CoupledReport, RunSummary, Trajectory};
use aoi_theory::CheckReport;

use crate::error::CliError;

/// Writes `content` to `path` via a temp file in the same directory plus an
/// atomic rename.
pub fn write_atomic(path: &Path, content: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut file = tempfile::NamedTempFile::new_in(dir)
        .map_err(|err| CliError::io(format!("creating temp file near {}", path.display()), err))?;
    file.write_all(content.as_bytes())
        .map_err(|err| CliError::io(format!("writing {}", path.display()), err))?;
    file.persist(path)
        .map_err(|err| CliError::io(format!("moving output into {}", path.display()), err.error))?;
    Ok(())
}

/// Per-slot mean age curves, one row per policy per slot.
pub fn summary_csv(summaries: &[RunSummary]) -> String {
    let mut out = String::from("policy,t,mean_weighted_sum_h,mean_weighted_sum_g,n_runs,seed\n");
    for summary in summaries {
        for (index, (h, g)) in summary
            .mean_weighted_sum_h
            .iter()
            .zip(&summary.mean_weighted_sum_g)
            .enumerate()
        {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                summary.policy_id,
                index + 1,
                h,
                g,
                summary.n_runs,
                summary.master_seed,
            ));
        }
    }
    out
}

/// One row per policy with the batch-level value statistics.
pub fn averages_csv(summaries: &[RunSummary]) -> String {
    let mut out = String::from("policy,value_mean,value_sd,half_width_95,n_runs,seed\n");
    for summary in summaries {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            summary.policy_id,
            summary.value_mean,
            summary.value_sd,
            summary.half_width_95,
            summary.n_runs,
            summary.master_seed,
        ));
    }
    out
}

/// Per-run paired values against the first policy, one row per policy per
/// run.
pub fn coupled_csv(report: &CoupledReport) -> String {
    let mut out = String::from("policy,run,value,diff_vs_first\n");
    for (index, summary) in report.summaries.iter().enumerate() {
        for run in 0..report.per_run_values[index].len() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                summary.policy_id,
                run,
                report.per_run_values[index][run],
                report.paired_diffs_vs_first[index][run],
            ));
        }
    }
    out
}

/// Full slot-by-slot, sensor-by-sensor trace of recorded runs.
///
/// Sensors are numbered from 1. `sampled`/`updated` flag selection;
/// `sample_outage`/`update_outage` are 1 only when the sensor was selected
/// on that channel and the draw came up as an outage.
pub fn trajectory_csv(trajectories: &[Trajectory]) -> String {
    let mut out =
        String::from("run,t,k,g_k,h_k,sampled,updated,sample_outage,update_outage\n");
    for (run, trajectory) in trajectories.iter().enumerate() {
        for record in trajectory.records() {
            let k = record.state.g.len();
            for sensor in 0..k {
                let sample_rank = record
                    .action
                    .sample_set()
                    .iter()
                    .position(|&s| s == sensor);
                let update_rank = record
                    .action
                    .update_set()
                    .iter()
                    .position(|&s| s == sensor);
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    run,
                    record.state.t,
                    sensor + 1,
                    record.state.g[sensor],
                    record.state.h[sensor],
                    u8::from(sample_rank.is_some()),
                    u8::from(update_rank.is_some()),
                    u8::from(sample_rank.is_some_and(|rank| record.draws.sample[rank])),
                    u8::from(update_rank.is_some_and(|rank| record.draws.update[rank])),
                ));
            }
        }
    }
    out
}

/// Transposed single-run trace: one row per series, one column per slot.
///
/// Selection sets are rendered 1-based and semicolon-joined so they fit a
/// single CSV cell.
pub fn trace_series_csv(trajectory: &Trajectory) -> String {
    let join_set = |set: &[usize]| {
        set.iter()
            .map(|&k| (k + 1).to_string())
            .collect::<Vec<_>>()
            .join(";")
    };
    let mut header = String::from("series");
    for record in trajectory.records() {
        header.push_str(&format!(",t{}", record.state.t));
    }
    let mut out = header;
    out.push('\n');
    for (label, values) in [
        ("sum_g", trajectory.sum_g_per_slot()),
        ("sum_h", trajectory.sum_h_per_slot()),
    ] {
        out.push_str(label);
        for value in values {
            out.push_str(&format!(",{value}"));
        }
        out.push('\n');
    }
    for (label, pick) in [
        ("sample_set", true),
        ("update_set", false),
    ] {
        out.push_str(label);
        for record in trajectory.records() {
            let set = if pick {
                record.action.sample_set()
            } else {
                record.action.update_set()
            };
            out.push_str(&format!(",{}", join_set(set)));
        }
        out.push('\n');
    }
    out
}

/// One verdict line per check report.
pub fn check_lines(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for report in reports {
        out.push_str(&report.render_line());
        out.push('\n');
    }
    out
}
