//! End-to-end contract tests for the `phasecov` binary: output layouts,
//! frozen values, exit codes, and stdout/file parity.

use std::process::{Command, Output};

const TRAJECTORY_HEADER: &str = "t,p,f_min,f_max,nu2_squared,nu_inf_paper,nu_inf_bloch,\
                                 concurrence,eof,f_min_paper,f_max_paper,nu2_squared_paper,\
                                 nu_inf_trajectory_paper";

fn phasecov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phasecov"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout_of(args: &[&str]) -> String {
    let out = phasecov(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout should be utf-8")
}

fn exit_code(args: &[&str]) -> i32 {
    phasecov(args).status.code().expect("no exit code")
}

fn parse_csv_row(line: &str) -> Vec<f64> {
    line.split(',')
        .map(|field| field.parse().unwrap_or(f64::NAN))
        .collect()
}

#[test]
fn trajectory_csv_header_is_exact() {
    let text = stdout_of(&["trajectory", "exp", "--p", "0.5", "--t", "0:1:3"]);
    assert_eq!(text.lines().next(), Some(TRAJECTORY_HEADER));
}

#[test]
fn trajectory_exp_grid_has_expected_shape() {
    let text = stdout_of(&["trajectory", "exp", "--p", "0,0.5,0.7,1", "--t", "0:4:401"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 4 * 401);
    assert!(text.ends_with('\n'));
    assert!(!text.contains('\r'));

    // Every measure column starts exactly at 1 when t = 0, for every p.
    for block in 0..4 {
        let row = lines[1 + block * 401];
        for field in row.split(',').skip(2) {
            assert_eq!(field, "1.0000000000000000e0", "t=0 row of block {block}");
        }
    }

    // Time sweeps fastest: the first block walks t while p stays put.
    let first = parse_csv_row(lines[1]);
    let second = parse_csv_row(lines[2]);
    assert_eq!(first[0], 0.0);
    assert_eq!(second[0], 0.01);
    assert_eq!(first[1], second[1]);
}

#[test]
fn trajectory_osc_defaults_match_full_period() {
    let text = stdout_of(&["trajectory", "osc", "--p", "0.5"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 629);
    let last = parse_csv_row(lines[629]);
    assert_eq!(last[0], std::f64::consts::TAU);
}

#[test]
fn osc_p_one_concurrence_tracks_cosine() {
    // The closed route resolves a cancelling radicand at p = 1, so it can
    // wobble by a few 1e-8 around |cos t|; the formula column is exact.
    let out = phasecov(&["trajectory", "osc", "--p", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        let row = parse_csv_row(line);
        let expected = row[0].cos().abs();
        assert!(
            (row[7] - expected).abs() < 2e-8,
            "t={}: concurrence {} vs |cos t| {}",
            row[0],
            row[7],
            expected
        );
    }
}

#[test]
fn measure_reports_frozen_values() {
    let text = stdout_of(&["measure", "0.4", "0", "0.25"]);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "lambda1,lambda3,lambda_star,f_min,f_min_x3,f_min_branch,f_max,f_max_x3,f_max_branch,\
         nu2_squared,nu2_squared_x3,nu2_squared_branch,nu_inf_paper,nu_inf_bloch,\
         nu_inf_bloch_x3,nu_inf_bloch_branch,concurrence,eof"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), 18);
    let f = |i: usize| -> f64 { row[i].parse().unwrap() };

    assert_eq!(f(3), 0.375);
    assert_eq!(f(4), -1.0);
    assert_eq!(row[5], "endpoint");
    assert_eq!(f(6), 0.71953125);
    assert_eq!(f(7), 0.3125);
    assert_eq!(row[8], "interior");
    assert!((f(9) - 0.61125).abs() < 1e-15);
    assert_eq!(row[11], "interior");
    assert_eq!(f(12), 0.7);
    assert!((f(13) - 0.7358495283014151).abs() < 1e-15);
    assert_eq!(row[15], "interior");
    assert_eq!(f(16), 0.0);
    assert_eq!(f(17), 0.0);
}

#[test]
fn measure_json_round_trips() {
    let text = stdout_of(&["measure", "0.4", "0", "0.25", "--format", "json"]);
    let record: serde_json::Value = serde_json::from_str(&text).unwrap();
    let object = record.as_object().unwrap();
    assert_eq!(object.len(), 18);
    assert_eq!(record["f_max"].as_f64(), Some(0.71953125));
    assert_eq!(record["f_min_branch"].as_str(), Some("endpoint"));
    assert_eq!(record["nu_inf_paper"].as_f64(), Some(0.7));
}

#[test]
fn entanglement_reports_spectrum_and_ordering() {
    let text = stdout_of(&["entanglement", "0.4", "0.5", "0.25"]);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some(
            "lambda1,lambda3,lambda_star,concurrence_closed,concurrence_spectral,eof,\
             r_plus,r_minus,r_degenerate,labels_sorted"
        )
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let closed: f64 = row[3].parse().unwrap();
    let spectral: f64 = row[4].parse().unwrap();
    assert!((closed - 0.18349364905389037).abs() < 1e-15);
    assert!((closed - spectral).abs() < 1e-10);
    // r_minus outranks the degenerate pair here, an order the labels miss.
    assert_eq!(row[9], "false");

    let unital = stdout_of(&["entanglement", "0.5", "0.5", "0"]);
    assert!(unital.lines().nth(1).unwrap().ends_with("true"));
}

#[test]
fn validate_prints_slacks_and_fixed_point() {
    let text = stdout_of(&["validate", "0.4", "0", "0.25"]);
    assert!(text.contains("cp valid: true"));
    assert!(text.contains("slack"));
    assert!(text.contains("non-unitality degree: 0.25"));
    assert!(text.contains("invariant state x3: 0.25"));

    let degenerate = stdout_of(&["validate", "0.5", "1", "0"]);
    assert!(degenerate.contains("degenerate"));
}

#[test]
fn exit_codes_follow_contract() {
    assert_eq!(exit_code(&["validate", "0.4", "0", "0.25"]), 0);
    assert_eq!(exit_code(&["validate", "0.5", "0", "0.25"]), 2);
    assert_eq!(exit_code(&["measure", "0.5", "0", "0.25"]), 2);
    assert_eq!(exit_code(&["entanglement", "0.9", "0.9", "0.9"]), 2);
    assert_eq!(exit_code(&["--help"]), 0);
    assert_eq!(exit_code(&["--version"]), 0);
    assert_eq!(exit_code(&["trajectory", "exp", "--help"]), 0);
    // Usage errors: unknown family, malformed grids, out-of-range weights.
    assert_eq!(exit_code(&["trajectory", "wobble"]), 64);
    assert_eq!(exit_code(&["trajectory", "exp", "--t", "4:0:10"]), 64);
    assert_eq!(exit_code(&["trajectory", "exp", "--t", "0:4"]), 64);
    assert_eq!(exit_code(&["trajectory", "exp", "--t", "0:4:0"]), 64);
    assert_eq!(exit_code(&["trajectory", "exp", "--t", "-1:4:10"]), 64);
    assert_eq!(exit_code(&["trajectory", "exp", "--p", "0,1.5"]), 64);
    assert_eq!(exit_code(&["trajectory", "exp", "--p", ""]), 64);
    assert_eq!(exit_code(&["trajectory", "exp", "--sign", "x"]), 64);
    assert_eq!(exit_code(&["measure", "0.4", "0"]), 64);
    assert_eq!(exit_code(&["oracle-check", "0"]), 64);
    assert_eq!(exit_code(&["oracle-check", "5", "--grid", "1,16,20"]), 64);
    assert_eq!(exit_code(&["oracle-check", "5", "--grid", "801,0,20"]), 64);
    assert_eq!(exit_code(&["no-such-command"]), 64);
}

#[test]
fn negative_parameters_parse_as_values() {
    assert_eq!(exit_code(&["validate", "-0.2", "-0.5", "0.1"]), 0);
    let text = stdout_of(&["measure", "-0.3", "0.2", "-0.1"]);
    let row = parse_csv_row(text.lines().nth(1).unwrap());
    assert_eq!(row[0], -0.3);
    assert_eq!(row[2], -0.1);
    assert_eq!(
        exit_code(&[
            "trajectory",
            "osc",
            "--p",
            "0.5",
            "--sign",
            "-",
            "--t",
            "1:1:1"
        ]),
        0
    );
}

#[test]
fn out_flag_writes_stdout_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let on_stdout = stdout_of(&["trajectory", "exp", "--p", "0.3", "--t", "0:2:40"]);
    let status = phasecov(&[
        "trajectory",
        "exp",
        "--p",
        "0.3",
        "--t",
        "0:2:40",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(status.status.success());
    assert!(status.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), on_stdout);
}

#[test]
fn trajectory_json_is_one_array_with_csv_field_names() {
    let text = stdout_of(&[
        "trajectory",
        "osc",
        "--p",
        "0,0.5",
        "--t",
        "0:3:50",
        "--format",
        "json",
    ]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&text).unwrap();
    assert_eq!(rows.len(), 100);
    // Parsed objects sort keys, so compare the name sets and check the raw
    // text keeps the serialized order aligned with the CSV header.
    let mut keys: Vec<&str> = rows[0]
        .as_object()
        .unwrap()
        .keys()
        .map(|k| k.as_str())
        .collect();
    let mut expected: Vec<&str> = TRAJECTORY_HEADER.split(',').collect();
    keys.sort_unstable();
    expected.sort_unstable();
    assert_eq!(keys, expected);
    let mut cursor = 0;
    for name in TRAJECTORY_HEADER.split(',') {
        let needle = format!("\"{name}\":");
        let at = text[cursor..].find(&needle).expect("field in order");
        cursor += at + needle.len();
    }
    assert_eq!(rows[0]["t"].as_f64(), Some(0.0));
    assert_eq!(rows[0]["f_min"].as_f64(), Some(1.0));
    assert_eq!(rows[50]["p"].as_f64(), Some(0.5));
}

#[test]
fn oracle_check_small_grid_passes_gate() {
    let out = phasecov(&["oracle-check", "25", "--seed", "7", "--grid", "801,16,20"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("audited 25 channels (seed 7, grid 801x16 with 20 refinement passes)"));
    assert!(text.contains("max |closed - oracle| for f_min:"));
    assert!(text.contains("max |closed - oracle| for fixed point iterated vs closed:"));
    assert!(text.contains("diagnostic: three-term nu_inf max undercount:"));
    assert!(text.contains("diagnostic: labeled concurrence-spectrum ordering violations:"));
    assert!(text.ends_with("gate (every audited gap < 1e-6): PASS\n"));
}
