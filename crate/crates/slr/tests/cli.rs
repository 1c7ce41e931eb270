//! End-to-end tests of the `slr` binary: exit codes, JSON reports, SVG
//! output and byte-level determinism.

use slr::catalog::catalog;
use slr::engine::pairwise_scan;
use slr::rational::parse_rational;
use slr::selfsimilar::curve_spec_to_json;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_slr"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn scratch_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("slr-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

#[test]
fn bounds_on_peano_converges_with_lower_above_four() {
    let out = run(&[
        "bounds",
        "--curve",
        "peano9",
        "--gap",
        "1/10",
        "--max-depth",
        "4",
        "--no-timestamp",
    ]);
    assert!(out.status.success(), "{}", stderr_str(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["converged"], true);
    let lower = parse_rational(v["lower"].as_str().unwrap()).unwrap();
    let upper = parse_rational(v["upper"].as_str().unwrap()).unwrap();
    assert!(lower <= upper);
    assert!(&upper - &lower <= parse_rational("1/10").unwrap());
    assert!(lower > parse_rational("4").unwrap());
    assert!(v.get("unix_time").is_none());
}

#[test]
fn bounds_missing_spec_file_exits_two_naming_the_path() {
    let out = run(&["bounds", "--spec-file", "/no/such/spec.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("/no/such/spec.json"));
}

#[test]
fn bounds_rejects_invalid_spec_naming_the_invariant() {
    let dir = scratch_dir();
    let path = dir.join("bad-weights.json");
    let spec = catalog("hilbert").unwrap();
    let text = curve_spec_to_json(&spec).replace("\"1/4\"", "\"1/5\"");
    std::fs::write(&path, text).unwrap();
    let out = run(&["bounds", "--spec-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("sum to 1"), "{}", stderr_str(&out));
}

#[test]
fn bounds_accepts_spec_files_and_matches_the_catalog() {
    let dir = scratch_dir();
    let path = dir.join("hilbert.json");
    std::fs::write(&path, curve_spec_to_json(&catalog("hilbert").unwrap())).unwrap();
    let from_file = run(&[
        "bounds",
        "--spec-file",
        path.to_str().unwrap(),
        "--gap",
        "1",
        "--max-depth",
        "5",
        "--no-timestamp",
    ]);
    let from_name = run(&[
        "bounds",
        "--curve",
        "hilbert",
        "--gap",
        "1",
        "--max-depth",
        "5",
        "--no-timestamp",
    ]);
    assert!(from_file.status.success());
    assert!(from_name.status.success());
    let a: serde_json::Value = serde_json::from_str(&stdout_str(&from_file)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout_str(&from_name)).unwrap();
    assert_eq!(a["lower"], b["lower"]);
    assert_eq!(a["upper"], b["upper"]);
}

#[test]
fn bounds_output_is_byte_deterministic_across_runs_and_threads() {
    let args = [
        "bounds",
        "--curve",
        "hilbert",
        "--gap",
        "1",
        "--max-depth",
        "4",
        "--no-timestamp",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let threaded = bin()
        .args(args)
        .args(["--threads", "4"])
        .output()
        .unwrap();
    assert_eq!(first.stdout, threaded.stdout);
    let via_env = bin()
        .args(args)
        .env("SLR_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(first.stdout, via_env.stdout);
}

#[test]
fn bounds_svg_has_one_polyline_and_witness_markers() {
    let dir = scratch_dir();
    let svg_path = dir.join("hilbert.svg");
    let out = run(&[
        "bounds",
        "--curve",
        "hilbert",
        "--gap",
        "1",
        "--max-depth",
        "4",
        "--no-timestamp",
        "--svg",
        svg_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 1);
    assert_eq!(svg.matches("<circle").count(), 2);
    assert!(svg.contains("xmlns"));
}

#[test]
fn certify_round_trip_and_tamper_detection() {
    let dir = scratch_dir();
    let cert_path = dir.join("cert.json");
    let out = run(&[
        "certify",
        "--curve",
        "hilbert",
        "--depth",
        "4",
        "--max-nodes",
        "8",
        "--out",
        cert_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr_str(&out));
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    let value = parse_rational(cert["value"].as_str().unwrap()).unwrap();
    assert!(value >= parse_rational("7/2").unwrap(), "value {value}");

    let verify = run(&[
        "certify",
        "--verify",
        cert_path.to_str().unwrap(),
        "--curve",
        "hilbert",
        "--depth",
        "4",
    ]);
    assert!(verify.status.success(), "{}", stderr_str(&verify));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&verify)).unwrap();
    assert_eq!(report["pass"], true);

    // Tamper with the declared value.
    let mut tampered = cert.clone();
    tampered["value"] = serde_json::Value::String("999/1".to_string());
    let bad_path = dir.join("tampered.json");
    std::fs::write(&bad_path, serde_json::to_string(&tampered).unwrap()).unwrap();
    let verify = run(&[
        "certify",
        "--verify",
        bad_path.to_str().unwrap(),
        "--curve",
        "hilbert",
        "--depth",
        "4",
    ]);
    assert_eq!(verify.status.code(), Some(1));

    // Move a node off the vertex set.
    let mut off_vertex = cert.clone();
    off_vertex["nodes"][0]["x"] = serde_json::Value::String("1/3".to_string());
    let off_path = dir.join("off-vertex.json");
    std::fs::write(&off_path, serde_json::to_string(&off_vertex).unwrap()).unwrap();
    let verify = run(&[
        "certify",
        "--verify",
        off_path.to_str().unwrap(),
        "--curve",
        "hilbert",
        "--depth",
        "4",
    ]);
    assert_eq!(verify.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&verify)).unwrap();
    assert_eq!(report["node_failures"][0], 0);
}

#[test]
fn cases_pass_and_single_case_selection_works() {
    let dir = scratch_dir();
    let json_path = dir.join("cases.json");
    let out = run(&["cases", "--json", json_path.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(report.as_array().unwrap().len(), 11);
    assert!(report
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));

    let out = run(&["cases", "--only", "2a"]);
    assert!(out.status.success());
    assert!(stdout_str(&out).contains("29/8"));

    let out = run(&["cases", "--only", "zz"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lattice_proven_optimum_and_budget_exhaustion() {
    let out = run(&["lattice", "--rows", "3", "--cols", "3", "--no-timestamp"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["proven"], true);
    assert_eq!(v["optimum"], "2/1");
    assert_eq!(v["ordering"].as_array().unwrap().len(), 9);

    let out = run(&[
        "lattice",
        "--rows",
        "4",
        "--cols",
        "4",
        "--budget",
        "1000",
        "--no-timestamp",
    ]);
    assert!(out.status.success(), "budget exhaustion still exits 0");
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["proven"], false);
}

#[test]
fn lattice_svg_draws_a_numbered_path() {
    let dir = scratch_dir();
    let svg_path = dir.join("lattice.svg");
    let out = run(&[
        "lattice",
        "--rows",
        "2",
        "--cols",
        "3",
        "--no-timestamp",
        "--svg",
        svg_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 1);
    assert_eq!(svg.matches("<circle").count(), 6);
}

#[test]
fn antipode_finds_an_ordered_witness() {
    let out = run(&["antipode", "--curve", "hilbert", "--depth", "4", "--no-timestamp"]);
    assert!(out.status.success(), "{}", stderr_str(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let e_first = parse_rational(v["e_first"].as_str().unwrap()).unwrap();
    let f_time = parse_rational(v["f_time"].as_str().unwrap()).unwrap();
    let e_last = parse_rational(v["e_last"].as_str().unwrap()).unwrap();
    assert!(e_first <= f_time && f_time <= e_last);
}

#[test]
fn circle_on_the_best_pair_interval_reports_no_violations() {
    let v = catalog("hilbert").unwrap().vertices(3).unwrap();
    let (_, wi, wj) = pairwise_scan(&v, 1).unwrap();
    let out = run(&[
        "circle",
        "--curve",
        "hilbert",
        "--depth",
        "3",
        "--a-idx",
        &wi.to_string(),
        "--b-idx",
        &wj.to_string(),
        "--no-timestamp",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(report["violations"].as_array().unwrap().len(), 0);

    let bad = run(&[
        "circle", "--curve", "hilbert", "--depth", "3", "--a-idx", "5", "--b-idx", "5",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn exactly_one_curve_source_is_required() {
    let out = run(&["bounds"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("--curve or --spec-file"));
}
