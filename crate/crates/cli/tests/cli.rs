use std::process::{Command, Output};

use tempfile::TempDir;

fn epicox(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_epicox"));
    cmd.args(args).env_remove("EPICOX_ENUM_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn reduce_f_writes_pointed_graph() {
    let dir = TempDir::new().unwrap();
    let k2 = write(&dir, "k2.txt", "n 2\ne 0 1\n");
    let target = dir.path().join("out.txt");
    let out = epicox(&["reduce-f", &k2, "-o", target.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&target).unwrap(), "n 3 reflexive base 2\ne 0 2\ne 1 2\n");

    let p3 = write(&dir, "p3.json", r#"{"n": 3, "edges": [[0, 1], [1, 2]], "reflexive": false}"#);
    let out = epicox(&["--format", "json", "reduce-f", &p3], &[]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["n"], 4);
    assert_eq!(json["base"], 3);
}

#[test]
fn precondition_and_parse_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let isolated = write(&dir, "iso.txt", "n 2\n");
    assert_eq!(epicox(&["reduce-f", &isolated], &[]).status.code(), Some(2));
    let broken = write(&dir, "bad.txt", "n 2\ne 0 5\n");
    assert_eq!(epicox(&["build-coxeter", &broken], &[]).status.code(), Some(2));
    let missing = dir.path().join("missing.txt");
    assert_eq!(epicox(&["k-graph", missing.to_str().unwrap()], &[]).status.code(), Some(2));
}

#[test]
fn presentation_and_matrix_outputs() {
    let dir = TempDir::new().unwrap();
    let k2 = write(&dir, "k2.txt", "n 2\ne 0 1\n");
    let out = stdout(&epicox(&["emit-presentation", &k2], &[]));
    assert_eq!(out.lines().count(), 26);
    assert!(out.lines().any(|l| l == "(v0_4 v1_4)^2"));
    let one = write(&dir, "one.txt", "n 1\n");
    let out = stdout(&epicox(&["build-coxeter", &one], &[]));
    assert_eq!(out.lines().next(), Some("rank 4"));
}

#[test]
fn k_graph_json_round_trips() {
    let dir = TempDir::new().unwrap();
    let p3 = write(&dir, "p3.txt", "n 3\ne 0 1\ne 1 2\n");
    let out = epicox(&["--format", "json", "k-graph", &p3], &[]);
    assert_eq!(out.status.code(), Some(0));
    let json: epicox::reconstruction::KGraphJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json.graph.edges, vec![[0, 1], [1, 2]]);
    assert_eq!(json.witnesses.len(), 2);
    let again = serde_json::to_string(&json).unwrap();
    let back: epicox::reconstruction::KGraphJson = serde_json::from_str(&again).unwrap();
    assert_eq!(back, json);
}

#[test]
fn ks_classes_lists_blocks() {
    let dir = TempDir::new().unwrap();
    let two = write(&dir, "two.txt", "n 2\n");
    let out = stdout(&epicox(&["ks-classes", &two], &[]));
    assert_eq!(out, "class 0: {v0_1, v0_2, v0_3, v0_4}\nclass 1: {v1_1, v1_2, v1_3, v1_4}\n");
}

#[test]
fn verify_l4_and_enum_cap_override() {
    let out = epicox(&["verify-l4"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("order 120"));
    let low = epicox(&["verify-l4"], &[("EPICOX_ENUM_CAP", "100")]);
    assert_eq!(low.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&low.stderr).contains("240"));
}

#[test]
fn check_theorem_passes_and_detects_injected_fault() {
    let out = epicox(&["check-theorem", "--max-vertices", "2", "--radius", "6"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).trim_end().ends_with("pass"));
    let vacuous = epicox(&["check-theorem", "--max-vertices", "0"], &[]);
    assert_eq!(vacuous.status.code(), Some(0));
    let faulty = epicox(&["check-theorem", "--max-vertices", "1", "--inject-fault"], &[]);
    assert_eq!(faulty.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&faulty.stderr).contains("\"check\":\"relators\""));
}

#[test]
fn acceptance_with_low_cap_is_rejected() {
    let out = epicox(&["acceptance", "--enum-cap", "100"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
}
