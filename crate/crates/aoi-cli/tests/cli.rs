//! End-to-end tests against the compiled binary.

use std::path::Path;
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_aoi-relay"))
}

fn write_config(dir: &Path, text: &str) -> std::path::PathBuf {
    let path = dir.join("experiment.cfg");
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

#[test]
fn reproduce_emits_the_reference_trace_on_stdout() {
    let output = binary().args(["reproduce", "table1"]).output().unwrap();
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let table = stdout(&output);
    assert!(table.contains("sum_g,5,7,7,7,7,7"), "got:\n{table}");
    assert!(table.contains("sum_h,5,10,12,12,12,12"), "got:\n{table}");
    assert!(stderr(&output).contains("splitmix64-chain-v1"));
    assert!(!table.contains('#'), "metadata leaked into the data channel");
}

#[test]
fn unknown_presets_and_flags_exit_with_usage_errors() {
    let output = binary().args(["reproduce", "fig9"]).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("table1"), "should list valid names");

    let output = binary().args(["--bogus-flag"]).output().unwrap();
    assert_eq!(output.status.code(), Some(1));

    let output = binary().arg("--help").output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("simulate"));
}

#[test]
fn malformed_configs_are_rejected_with_their_line_and_leave_no_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("summary.csv");
    let config = write_config(
        dir.path(),
        &format!("K=5 S=3 U=3\nT=twenty\nout={}\n", out.display()),
    );
    let output = binary()
        .args(["simulate", config.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("line 2"), "got: {}", stderr(&output));
    assert!(!out.exists(), "failed run must not leave an output file");
}

#[test]
fn simulate_writes_byte_identical_output_across_invocations() {
    let dir = tempfile::tempdir().unwrap();
    let mut bytes = Vec::new();
    for round in 0..2 {
        let out = dir.path().join(format!("summary-{round}.csv"));
        let config = write_config(
            dir.path(),
            &format!(
                "K=4 S=2 U=2 T=8 p=0.2 q=0.2 policies=greedy,random n_runs=200 seed=7 out={}",
                out.display()
            ),
        );
        let output = binary()
            .args(["simulate", config.to_str().unwrap()])
            .output()
            .unwrap();
        assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
        bytes.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);
    let text = String::from_utf8(bytes.pop().unwrap()).unwrap();
    assert!(text.starts_with("policy,t,mean_weighted_sum_h,mean_weighted_sum_g,n_runs,seed\n"));
    assert_eq!(text.lines().count(), 1 + 2 * 8);
}

#[test]
fn trajectories_record_every_run_slot_sensor_cell() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let config = write_config(
        dir.path(),
        "K=3 S=1 U=1 T=4 p=0.3 q=0.3 policies=random n_runs=5 seed=3",
    );
    let output = binary()
        .args([
            "simulate",
            config.to_str().unwrap(),
            "--trajectories",
            trace.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let text = std::fs::read_to_string(&trace).unwrap();
    assert_eq!(text.lines().count(), 1 + 5 * 4 * 3);
    assert!(text.starts_with("run,t,k,g_k,h_k,sampled,updated,sample_outage,update_outage\n"));

    let config = write_config(dir.path(), "K=3 S=1 U=1 T=4 policies=greedy,random");
    let output = binary()
        .args([
            "simulate",
            config.to_str().unwrap(),
            "--trajectories",
            trace.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1), "multi-policy trace must be refused");
}

#[test]
fn coupled_reporting_pairs_policies_on_shared_draws() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "K=3 S=1 U=1 T=5 p=0.2 q=0.2 policies=greedy,random n_runs=50 seed=9",
    );
    let output = binary()
        .args(["coupled", config.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "policy,run,value,diff_vs_first");
    assert_eq!(lines.len(), 1 + 2 * 50);
    for line in &lines[1..=50] {
        assert!(line.starts_with("greedy,"));
        assert!(line.ends_with(",0"), "self-diff must be zero: {line}");
    }
    assert!(stderr(&output).contains("paired value-crossings random-vs-greedy"));
}

#[test]
fn exact_values_match_the_library_and_respect_the_out_key() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("exact.csv");
    let config = write_config(
        dir.path(),
        &format!(
            "K=3 S=1 U=1 T=4 p=0.1 q=0.1 policies=greedy out={}",
            out.display()
        ),
    );
    let output = binary()
        .args(["exact", config.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let text = std::fs::read_to_string(&out).unwrap();
    let value: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .strip_prefix("greedy,")
        .unwrap()
        .parse()
        .unwrap();
    let cfg = aoi_core::NetworkConfig::symmetric(3, 1, 1, 4, 0.1, 0.1).unwrap();
    let expected = aoi_sim::exact_expected_value(
        &cfg,
        &aoi_policies::PolicySpec::Greedy,
        aoi_sim::DEFAULT_PATH_CAP,
    )
    .unwrap();
    assert!((value - expected).abs() < 1e-12);
}

#[test]
fn budget_refusals_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "K=6 S=2 U=2 T=12 p=0.3 q=0.3 policies=dp n_runs=1 seed=1",
    );
    let output = binary()
        .args(["solve-dp", config.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3), "stderr: {}", stderr(&output));
    assert!(stderr(&output).contains("state cap"));

    let config = write_config(
        dir.path(),
        "K=6 S=2 U=2 T=12 p=0.3 q=0.3 policies=greedy n_runs=1 seed=1",
    );
    let output = binary()
        .args(["exact", config.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3), "stderr: {}", stderr(&output));
    assert!(stderr(&output).contains("branches"));
}

#[test]
fn solve_dp_reports_the_errorless_optimum_and_writes_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("dp.tbl");
    let config = write_config(dir.path(), "K=3 S=1 U=1 T=4 policies=dp");
    let output = binary()
        .args([
            "solve-dp",
            config.to_str().unwrap(),
            "--table-out",
            table.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("states = "));
    assert!(text.contains("optimal_value = "));
    assert!(table.exists());
    let value: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("optimal_value = "))
        .unwrap()
        .parse()
        .unwrap();
    let cfg = aoi_core::NetworkConfig::errorless_symmetric(3, 1, 1, 4).unwrap();
    let solved =
        aoi_policies::solve_backward_induction(&cfg, aoi_policies::DEFAULT_STATE_CAP).unwrap();
    assert!((value - solved.optimal_value()).abs() < 1e-12);
}

#[test]
fn train_q_writes_table_and_curve_files() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("q.tbl");
    let curve = dir.path().join("curve.csv");
    let config = write_config(dir.path(), "K=3 S=1 U=1 T=4 policies=q seed=5");
    let output = binary()
        .args([
            "train-q",
            config.to_str().unwrap(),
            "--episodes",
            "500",
            "--eval-every",
            "250",
            "--table-out",
            table.to_str().unwrap(),
            "--curve-out",
            curve.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    assert!(stdout(&output).contains("greedy_value = "));
    assert!(table.exists());
    let curve_text = std::fs::read_to_string(&curve).unwrap();
    assert!(curve_text.starts_with("episode,value\n"));
    assert!(curve_text.lines().count() >= 2);

    let output = binary()
        .args([
            "train-q",
            config.to_str().unwrap(),
            "--episodes",
            "10",
            "--curve-out",
            curve.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(
        output.status.code(),
        Some(1),
        "a curve without --eval-every must be refused"
    );
}

#[test]
fn verify_passes_and_writes_one_verdict_per_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("checks.txt");
    let output = binary()
        .args([
            "verify",
            "--ordering-instances",
            "25",
            "--identity-instances",
            "10",
            "--seed",
            "2",
            "--out",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.lines().count() > 80);
    for line in text.lines() {
        assert!(line.ends_with(" pass -"), "unexpected verdict: {line}");
    }
}
