use std::io::Write as _;
use std::process::Command;

use mqt::cli::{run, CliOutput};
use serde_json::Value;

fn mqt(args: &[&str]) -> CliOutput {
    let mut argv = vec!["mqt".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    run(argv)
}

fn json(out: &CliOutput) -> Value {
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("stdout is JSON")
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

fn cnf_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".cnf").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

/// Support of the register after applying the oracle to the uniform input
/// superposition, built directly from the truth table.
fn after_oracle(n: usize, table: &str) -> Vec<usize> {
    let mut support: Vec<usize> = table
        .chars()
        .enumerate()
        .map(|(x, bit)| if bit == '1' { (1 << n) | x } else { x })
        .collect();
    support.sort_unstable();
    support
}

fn ket(index: usize, width: usize) -> String {
    format!("|{index:0width$b}⟩")
}

#[test]
fn solve_single_point_table() {
    let out = mqt(&["solve", "--table", "1:01"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("verdict: sat"));
    assert!(out.stdout.contains("support: [2]"));
}

#[test]
fn solve_dimacs_file() {
    let f = cnf_file("p cnf 2 2\n1 0\n-2 0\n");
    let out = mqt(&["solve", f.path().to_str().unwrap(), "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["verdict"], "sat");
    assert_eq!(v["sat_count"], 1);
}

#[test]
fn solve_unsatisfiable_exits_zero() {
    let v = json(&mqt(&["solve", "--table", "2:0000", "--format", "json"]));
    assert_eq!(v["verdict"], "unsat");
    assert_eq!(v["support"], serde_json::json!([0]));
}

#[test]
fn solve_json_matches_golden() {
    let out = mqt(&["solve", "--table", "2:0010", "--format", "json"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, golden("solve_2_0010.json"));
}

#[test]
fn sample_mode_is_seeded_and_reproducible() {
    let args = [
        "solve",
        "--table",
        "3:00000100",
        "--mode",
        "sample",
        "--seed",
        "7",
        "--format",
        "json",
    ];
    let first = mqt(&args);
    let second = mqt(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, golden("sample_3_seed7.json"));

    let v = json(&first);
    let support: Vec<u64> = v["support"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert!(support.contains(&v["outcome"].as_u64().unwrap()));
}

#[test]
fn sample_mode_requires_seed_and_support_mode_rejects_it() {
    assert_eq!(mqt(&["solve", "--table", "1:01", "--mode", "sample"]).code, 1);
    assert_eq!(mqt(&["solve", "--table", "1:01", "--seed", "3"]).code, 1);
}

#[test]
fn promise_violation_exits_two() {
    let out = mqt(&["solve", "--table", "2:1100"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("2 satisfying assignments"));
}

#[test]
fn skip_promise_check_reports_no_verdict() {
    let v = json(&mqt(&[
        "solve",
        "--table",
        "2:1100",
        "--skip-promise-check",
        "--format",
        "json",
    ]));
    assert_eq!(v["verdict"], Value::Null);
    assert_eq!(v["sat_count"], 2);
}

#[test]
fn parse_errors_carry_position() {
    let f = cnf_file("p cnf 2 1\n1 3 0\n");
    let out = mqt(&["solve", f.path().to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("line 2, column 3"), "{}", out.stderr);
}

#[test]
fn lenient_mode_accepts_extra_clauses_and_open_tail() {
    let f = cnf_file("p cnf 2 1\n1 0\n-2");
    assert_eq!(mqt(&["solve", f.path().to_str().unwrap()]).code, 1);
    let out = mqt(&["solve", f.path().to_str().unwrap(), "--lenient"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("verdict: sat"));

    let short = cnf_file("p cnf 2 3\n1 0\n-2 0\n");
    assert_eq!(mqt(&["solve", short.path().to_str().unwrap(), "--lenient"]).code, 1);
}

#[test]
fn missing_file_and_bad_table_are_usage_errors() {
    assert_eq!(mqt(&["solve", "/nonexistent/x.cnf"]).code, 1);
    assert_eq!(mqt(&["solve", "--table", "2:01"]).code, 1);
    assert_eq!(mqt(&["solve", "--table", "1:0x"]).code, 1);
    assert_eq!(mqt(&["frobnicate"]).code, 1);
    assert_eq!(mqt(&["--help"]).code, 0);
}

#[test]
fn trace_spread_step_for_constant_false() {
    let out = mqt(&["trace", "--table", "2:0000"]);
    assert_eq!(out.code, 0);
    let spread = out.stdout.lines().find(|l| l.contains("spread")).unwrap();
    assert!(spread.ends_with("|000⟩ + |001⟩ + |010⟩ + |011⟩"), "{spread}");
    assert_eq!(out.stdout.lines().filter(|l| l.contains('⟩')).count(), 8);
}

#[test]
fn trace_oracle_step_matches_direct_construction() {
    for table in ["0010", "1000", "0001", "0000"] {
        let spec = format!("2:{table}");
        let v = json(&mqt(&["trace", "--table", &spec, "--format", "json"]));
        let step = &v["trace"][2];
        assert_eq!(step["label"], "oracle");
        let expected: Vec<String> = after_oracle(2, table).iter().map(|&i| ket(i, 3)).collect();
        assert_eq!(step["state"], expected.join(" + "), "table {table}");
    }
}

#[test]
fn trace_json_matches_golden() {
    let out = mqt(&["trace", "--table", "2:0000", "--format", "json"]);
    assert_eq!(out.stdout, golden("trace_2_0000.json"));
}

#[test]
fn trace_rejects_unparseable_input() {
    let f = cnf_file("p cnf two 1\n1 0\n");
    assert_eq!(mqt(&["trace", f.path().to_str().unwrap()]).code, 1);
}

#[test]
fn verify_exhaustive_range() {
    let v = json(&mqt(&["verify", "--n-max", "4", "--format", "json"]));
    assert_eq!(v["failures"], 0);
    assert_eq!(v["instances"], 3 + 5 + 9 + 17);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["exhaustive"] == true));
}

#[test]
fn verify_random_range_is_clean_and_deterministic() {
    let args = ["verify", "--n-max", "10", "--random", "50", "--format", "json"];
    let first = mqt(&args);
    assert_eq!(json(&first)["failures"], 0);
    assert_eq!(first.stdout, mqt(&args).stdout);
}

#[test]
fn verify_rejects_oversized_range() {
    assert_eq!(mqt(&["verify", "--n-max", "30"]).code, 1);
}

#[test]
fn gates_census() {
    let v = json(&mqt(&["gates", "--format", "json"]));
    assert_eq!(v["invertible_count"], 6);
    assert_eq!(v["non_invertible_count"], 10);
    let s = v["invertible"]
        .as_array()
        .unwrap()
        .iter()
        .find(|g| g["name"] == "s")
        .unwrap();
    assert_eq!(s["matrix"], serde_json::json!([[1, 0], [1, 1]]));

    let text = mqt(&["gates"]).stdout;
    let row = text.lines().find(|l| l.contains(" s ")).unwrap();
    assert!(row.contains("|0⟩ ↦ |+⟩, |1⟩ ↦ |1⟩, |+⟩ ↦ |0⟩"), "{row}");
}

#[test]
fn bench_rows_and_agreement() {
    let v = json(&mqt(&["bench", "--n", "8,12,16", "--repeat", "1", "--format", "json"]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(v["backends_agree"], true);
    for pair in rows.chunks(2) {
        assert_eq!(pair[0]["n"], pair[1]["n"]);
        assert_eq!(pair[0]["verdict"], pair[1]["verdict"]);
        assert_eq!(pair[0]["support_size"], pair[1]["support_size"]);
    }
}

#[test]
fn backends_produce_identical_output() {
    let dense = mqt(&["trace", "--table", "3:00010000", "--backend", "dense"]);
    let sparse = mqt(&["trace", "--table", "3:00010000", "--backend", "sparse"]);
    assert_eq!(dense.code, 0);
    assert_eq!(dense.stdout, sparse.stdout);
}

#[test]
fn binary_honours_backend_env_and_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mqt");
    let out = Command::new(bin)
        .args(["solve", "--table", "1:01"])
        .env("MQT_BACKEND", "sparse")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("support: [2]"));

    let bad = Command::new(bin)
        .args(["solve", "--table", "1:01"])
        .env("MQT_BACKEND", "quantum")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));

    let violated = Command::new(bin).args(["solve", "--table", "1:11"]).output().unwrap();
    assert_eq!(violated.status.code(), Some(2));
}
