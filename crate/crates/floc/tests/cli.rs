//! Command-line contract: subcommands, exit codes, and output shapes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn floc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_floc"))
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("floc-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

fn code(output: &Output) -> i32 {
    output.status.code().unwrap_or(-1)
}

#[test]
fn run_emits_one_row_per_round_plus_header() {
    let dir = temp_dir("run");
    let config = dir.join("base.scn");
    write(
        &config,
        "node_count = 10\nrounds = 500\nseed = 4\ns_max = 0\n\
initial_energy_sink_neighbors = 1e6\ninitial_energy_others = 1e6\n",
    );
    let out = dir.join("metrics.csv");
    let output = floc()
        .args(["run", "--config"])
        .arg(&config)
        .args(["--seed", "1", "--rounds", "100", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(code(&output), 0, "{output:?}");
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 101);
    assert!(lines[0].starts_with("round,active_node_ratio,"));
    assert!(text.ends_with('\n'));
}

#[test]
fn unknown_scenario_key_exits_with_config_code() {
    let dir = temp_dir("badkey");
    let config = dir.join("bad.scn");
    write(&config, "node_count = 10\nvoltage = 9\n");
    let output = floc()
        .args(["run", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(code(&output), 2);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("unknown key"), "stderr: {stderr}");
}

#[test]
fn usage_errors_exit_with_one() {
    let output = floc().args(["run", "--frobnicate"]).output().unwrap();
    assert_eq!(code(&output), 1);
    let output = floc().args(["sweep", "--param", "s_max"]).output().unwrap();
    assert_eq!(code(&output), 1, "missing required flags is a usage error");
}

#[test]
fn missing_config_file_is_a_runtime_error() {
    let output = floc()
        .args(["run", "--config", "/nonexistent/path.scn"])
        .output()
        .unwrap();
    assert_eq!(code(&output), 3);
}

#[test]
fn bad_sweep_parameter_is_a_config_error() {
    let dir = temp_dir("badparam");
    let out = dir.join("m.csv");
    let output = floc()
        .args(["sweep", "--param", "voltage", "--values", "1,2", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(code(&output), 2);
}

#[test]
fn validate_passes() {
    let output = floc().arg("validate").output().unwrap();
    assert_eq!(code(&output), 0);
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("term set cells (18)"));
    assert!(stdout.contains("PASS"));
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn rank_from_matrix_file_prints_expected_term_sets() {
    let matrix = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/role_matrix.txt");
    let output = floc()
        .args(["hflts", "rank", "--matrix"])
        .arg(&matrix)
        .args(["--mode", "optimistic"])
        .output()
        .unwrap();
    assert_eq!(code(&output), 0);
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("{vh, p}"));
    assert!(stdout.contains("{l, m, h}"));
    assert!(stdout.contains("[el, l]"));
    assert!(stdout.contains("selected: CH"));

    let output = floc()
        .args(["hflts", "rank", "--matrix"])
        .arg(&matrix)
        .args(["--mode", "pessimistic"])
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("selected: CM"));
}

#[test]
fn rank_from_criteria_vector_works() {
    let output = floc()
        .args([
            "hflts",
            "rank",
            "--criteria",
            "0.9,0.8,0.2,0.9,0.1,0.8",
            "--mode",
            "optimistic",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&output), 0);
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("selected:"));
}

#[test]
fn rank_without_inputs_is_a_config_error() {
    let output = floc().args(["hflts", "rank"]).output().unwrap();
    assert_eq!(code(&output), 2);
}

#[test]
fn sweep_writes_report_and_summary() {
    let dir = temp_dir("sweep");
    let config = dir.join("base.scn");
    write(&config, "node_count = 8\nrounds = 5\nseed = 2\ns_max = 0\n");
    let out = dir.join("m.csv");
    let output = floc()
        .args(["sweep", "--config"])
        .arg(&config)
        .args([
            "--param",
            "node_count",
            "--values",
            "6,8",
            "--seeds",
            "2",
            "--out",
        ])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(code(&output), 0, "{output:?}");
    let report = std::fs::read_to_string(&out).unwrap();
    assert_eq!(report.lines().count(), 1 + 2 * 2 * 5);
    let summary = std::fs::read_to_string(dir.join("m_summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 3);
    assert!(summary.starts_with("param,value,mean_active_node_ratio"));
}
