//! End-to-end checks of the `mdi` binary: flag parsing, output formats,
//! exit codes, and the config-file path.

use std::collections::HashMap;
use std::process::{Command, Output};

fn mdi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Parse a two-line CSV (header + one row) into name -> value.
fn single_record(out: &Output) -> HashMap<String, f64> {
    let text = stdout(out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    header
        .iter()
        .map(|s| s.to_string())
        .zip(row)
        .collect()
}

#[test]
fn eval_bell_eigenstate_is_maximally_entangled() {
    let out = mdi(&["eval", "--state", "ent:w=0.5", "--t", "0.3"]);
    assert!(out.status.success());
    let record = single_record(&out);
    assert!((record["concurrence"] - 1.0).abs() < 1e-9);
    assert!((record["purity"] - 1.0).abs() < 1e-9);
}

#[test]
fn eval_01_at_quarter_pi_is_maximally_entangled() {
    let out = mdi(&[
        "eval",
        "--state",
        "pure:theta_a=0,theta_b=3.14159265",
        "--t",
        "0.7853981634",
    ]);
    assert!(out.status.success());
    let record = single_record(&out);
    assert!((record["concurrence"] - 1.0).abs() < 1e-9);
}

#[test]
fn eval_maximally_mixed_stays_separable() {
    let out = mdi(&["eval", "--state", "mixed:axis=z,ra=0,rb=0", "--t", "1.0"]);
    assert!(out.status.success());
    let record = single_record(&out);
    assert!(record["concurrence"].abs() < 1e-12);
    assert!((record["purity"] - 0.25).abs() < 1e-12);
}

#[test]
fn eval_parse_failure_exits_2_and_names_the_field() {
    let out = mdi(&["eval", "--state", "ent:w=2.0", "--t", "0.3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains('w'), "stderr: {err}");

    let out = mdi(&["eval", "--state", "pure:theta_a=0.1", "--t", "0.3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("theta_b"), "stderr: {err}");
}

#[test]
fn eval_jsonl_format() {
    let out = mdi(&[
        "eval",
        "--state",
        "ent:w=0.5",
        "--t",
        "0.3",
        "--format",
        "jsonl",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("{\"t\":0.3,\"concurrence\":"), "{text}");
}

#[test]
fn eval_accepts_negative_times() {
    let out = mdi(&["eval", "--state", "ent:w=0.25", "--t", "-0.7853981633974483"]);
    assert!(out.status.success());
    let record = single_record(&out);
    assert!((record["concurrence"] - 1.0).abs() < 1e-9);
}

#[test]
fn eval_tilted_axis_changes_the_dynamics() {
    // |00> is inert for the z axis but entangles under a tilted one
    let z = mdi(&["eval", "--state", "pure:theta_a=0,theta_b=0", "--t", "0.6"]);
    let record = single_record(&z);
    assert!(record["concurrence"].abs() < 1e-10);

    let tilted = mdi(&[
        "eval",
        "--state",
        "pure:theta_a=0,theta_b=0",
        "--t",
        "0.6",
        "--axis",
        "1,0,1",
    ]);
    let record = single_record(&tilted);
    assert!(record["concurrence"] > 0.1, "{}", record["concurrence"]);
}

#[test]
fn thermal_infinite_temperature_is_maximally_mixed() {
    let out = mdi(&["thermal", "--beta", "0"]);
    assert!(out.status.success());
    let record = single_record(&out);
    assert!(record["concurrence"].abs() < 1e-12);
    assert!((record["purity"] - 0.25).abs() < 1e-10);
}

#[test]
fn thermal_low_temperature_ground_space_is_separable() {
    let out = mdi(&["thermal", "--beta", "50"]);
    assert!(out.status.success());
    let record = single_record(&out);
    assert!(record["concurrence"].abs() < 1e-9);
}

#[test]
fn thermal_concurrence_is_axis_independent() {
    let z = single_record(&mdi(&["thermal", "--beta", "1"]));
    let x = single_record(&mdi(&["thermal", "--beta", "1", "--axis", "x"]));
    assert!((z["concurrence"] - x["concurrence"]).abs() < 1e-10);
}

#[test]
fn thermal_rejects_negative_beta() {
    let out = mdi(&["thermal", "--beta=-1.0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("beta"), "stderr: {err}");
}

#[test]
fn verify_thermal_suite_passes() {
    let out = mdi(&["verify", "--suite", "thermal"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().all(|l| l.starts_with("PASS")), "{text}");
}

#[test]
fn verify_oracles_suite_passes() {
    let out = mdi(&["verify", "--suite", "oracles", "--draws", "100"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().all(|l| l.starts_with("PASS")), "{text}");
}

#[test]
fn verify_unknown_suite_is_a_usage_error() {
    let out = mdi(&["verify", "--suite", "everything"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_explicit_flags_work() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("depol.csv");
    let out = mdi(&[
        "sweep",
        "--family",
        "depol",
        "--fix",
        "w=0.5",
        "--fix",
        "t=0.7853981633974483",
        "--grid",
        "p=0:1:11",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "p,concurrence");
    assert_eq!(lines.count(), 11);
}

#[test]
fn sweep_config_file_works() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("sweep.cfg");
    std::fs::write(
        &cfg_path,
        "family = ent\ngrid.t = 0,3.141592653589793,21\nfixed.w = 0.25\nquantities = concurrence\n",
    )
    .unwrap();
    let out_path = dir.path().join("ent.csv");
    let out = mdi(&[
        "sweep",
        "--config",
        cfg_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("t,concurrence\n"));
    assert_eq!(text.lines().count(), 22);
}

#[test]
fn sweep_rejects_bad_preset_and_missing_source() {
    let out = mdi(&["sweep", "--preset", "fig9", "--out", "/tmp/x.csv"]);
    assert_eq!(out.status.code(), Some(2));

    let out = mdi(&["sweep", "--out", "/tmp/x.csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_unwritable_path_fails_nonzero() {
    let out = mdi(&["sweep", "--preset", "fig3", "--out", "/nonexistent/dir/f.csv"]);
    assert!(!out.status.success());
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn sweep_jsonl_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ent.jsonl");
    let out = mdi(&[
        "sweep",
        "--family",
        "ent",
        "--grid",
        "w=0:1:5",
        "--t",
        "0.5",
        "--out",
        path.to_str().unwrap(),
        "--format",
        "jsonl",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().all(|l| l.starts_with("{\"w\":")), "{text}");
}

#[test]
fn csv_values_reparse_to_identical_doubles() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig3.csv");
    let out = mdi(&["sweep", "--preset", "fig3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    for line in text.lines().skip(1).take(500) {
        for field in line.split(',') {
            let value: f64 = field.parse().unwrap();
            assert_eq!(format!("{value}"), field, "shortest round-trip broken");
        }
    }
}
