//! End-to-end checks of the command-line interface: literal parsing, exit
//! codes, deterministic output, caching and the CSV schema.

use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_factorinv"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json_of(output: &Output) -> Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn report_of_two_three_has_the_known_invariants() {
    let out = run(&["report", "2,3"], &[]);
    let v = json_of(&out);
    assert_eq!(v["invariants"]["omega"], 3);
    assert_eq!(v["invariants"]["catenary"], 3);
    assert_eq!(v["invariants"]["tame"], 3);
    assert_eq!(v["invariants"]["elasticity"], "3/2");
    assert_eq!(v["generic"], true);
    assert_eq!(v["frobenius"], 1);
}

#[test]
fn report_reads_affine_documents() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("example.json");
    std::fs::write(
        &path,
        r#"{"ambient_dim":3,
            "congruences":[{"coeffs":[1,0,1],"mod":2},{"coeffs":[0,1,1],"mod":2}],
            "equations":[]}"#,
    )
    .unwrap();
    let out = run(&["report", "--affine", path.to_str().unwrap()], &[]);
    let v = json_of(&out);
    assert_eq!(v["invariants"]["omega"], 3);
    assert_eq!(v["monoid"]["kind"], "affine");
}

#[test]
fn subcommand_values_for_small_inputs() {
    let omega = json_of(&run(&["omega", "19,46,391"], &[]));
    assert_eq!(omega["omega"], 23);
    let tame = json_of(&run(&["tame", "19,46,391"], &[]));
    assert_eq!(tame["tame"], 39);
    let catenary = json_of(&run(&["catenary", "5,7,9"], &[]));
    assert_eq!(catenary["catenary"], 5);
    assert_eq!(catenary["three_coprime_formula"]["value"], 5);
    let presentation = json_of(&run(&["presentation", "2,3"], &[]));
    assert_eq!(presentation["is_generic"], true);
    assert_eq!(presentation["pairs"].as_array().unwrap().len(), 1);
}

#[test]
fn blockmonoid_c3_summary() {
    let v = json_of(&run(&["blockmonoid", "C3"], &[]));
    assert_eq!(v["suite"]["generic"], true);
    assert_eq!(v["suite"]["catenary"], 3);
    assert_eq!(v["suite"]["tame"], 3);
    assert_eq!(v["suite"]["davenport"], 3);
    assert_eq!(v["rho"]["elasticity"], "3/2");
}

#[test]
fn unions_row_one_is_the_singleton() {
    let v = json_of(&run(&["unions", "2,3", "--kmax", "10"], &[]));
    assert_eq!(v["scan"]["rows"][0]["lengths"], serde_json::json!([1]));
    assert_eq!(v["scan"]["difference"], 1);
}

#[test]
fn exit_codes_follow_the_contract() {
    // Parse errors: 2.
    assert_eq!(run(&["report", "banana"], &[]).status.code(), Some(2));
    assert_eq!(run(&["report", "4,6"], &[]).status.code(), Some(2)); // gcd 2
    assert_eq!(run(&["report", "2,3,4"], &[]).status.code(), Some(2)); // not minimal
    assert_eq!(run(&["unions", "x"], &[]).status.code(), Some(2));
    // Resource limits: 3.
    assert_eq!(run(&["report", "C16"], &[]).status.code(), Some(3));
    assert_eq!(run(&["blockmonoid", "C32"], &[]).status.code(), Some(3));
    // I/O failures: 4.
    assert_eq!(
        run(
            &["search-frobenius", "3", "--out", "/nonexistent/dir/out.csv"],
            &[]
        )
        .status
        .code(),
        Some(4)
    );
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = run(&["report", "4,10,21"], &[]);
    let b = run(&["report", "4,10,21"], &[]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cache_round_trip_is_invisible() {
    let dir = tempfile::tempdir().unwrap();
    let cache_env = [("FACTORINV_CACHE_DIR", dir.path().to_str().unwrap())];
    let plain = run(&["report", "5,6,9"], &[]);
    let first = run(&["report", "5,6,9", "--cache"], &cache_env);
    let second = run(&["report", "5,6,9", "--cache"], &cache_env);
    assert!(second.status.success());
    assert_eq!(plain.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);
    assert!(dir.path().read_dir().unwrap().count() > 0, "cache written");
}

#[test]
fn block_reports_carry_the_symmetric_elasticity() {
    let v = json_of(&run(&["report", "C3"], &[]));
    assert_eq!(v["invariants"]["elasticity"], "3/2");
    assert_eq!(v["davenport"], 3);
    let v = json_of(&run(&["report", "C4"], &[]));
    assert_eq!(v["invariants"]["elasticity"], "2");
}

#[test]
fn scan_bound_flag_is_honored() {
    let v = json_of(&run(&["report", "5,6,9", "--bound", "40"], &[]));
    assert_eq!(v["invariants"]["catenary_adj"]["scan_bound"], 40);
}

#[test]
fn search_results_do_not_depend_on_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let out_a = run(
        &["search-frobenius", "8", "--out", a.to_str().unwrap(), "--jobs", "1"],
        &[],
    );
    let out_b = run(
        &["search-frobenius", "8", "--out", b.to_str().unwrap(), "--jobs", "4"],
        &[],
    );
    assert!(out_a.status.success() && out_b.status.success());
    assert_eq!(
        std::fs::read(&a).unwrap(),
        std::fs::read(&b).unwrap(),
        "CSV must be canonical regardless of parallelism"
    );
}

#[test]
fn search_frobenius_writes_the_documented_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("out.csv");
    let v = json_of(&run(
        &[
            "search-frobenius",
            "6",
            "--out",
            csv_path.to_str().unwrap(),
            "--jobs",
            "2",
        ],
        &[],
    ));
    // 1 + 1 + 2 + 2 + 5 + 4 monoids with Frobenius number 1..=6.
    assert_eq!(v["count"], 15);
    assert_eq!(v["omega_lt_tame"].as_array().unwrap().len(), 0);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "generators;frobenius;omega;catenary;tame;generic;omega_lt_tame"
    );
    assert_eq!(lines.next().unwrap(), "2 3;1;3;3;3;true;false");
    assert_eq!(csv.lines().count(), 16);
}
