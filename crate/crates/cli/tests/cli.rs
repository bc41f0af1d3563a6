use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const PETERSEN: &str = "IheA@GUAo";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fracchrom"))
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn validate_petersen_and_k4() {
    let dir = tempfile::tempdir().unwrap();
    let pet = write(dir.path(), "pet.g6", PETERSEN);
    let k4 = write(dir.path(), "k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let out = run(&["validate", pet.to_str().unwrap(), "--require-cubic-triangle-free"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["cubic_triangle_free_bridgeless"], true);
    let out = run(&["validate", k4.to_str().unwrap(), "--require-cubic-triangle-free"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["validate", k4.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "not a graph\n");
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["validate", "/nonexistent/graph.g6"]).status.code(), Some(2));
}

#[test]
fn prob_exact_petersen() {
    let dir = tempfile::tempdir().unwrap();
    let pet = write(dir.path(), "pet.g6", PETERSEN);
    let out = run(&["prob", pet.to_str().unwrap(), "--exact"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["min_marginal"], "117/320");
    assert_eq!(v["meets_target"], true);
    assert_eq!(v["phase4_bound_holds"], true);
}

#[test]
fn prob_monte_carlo_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let pet = write(dir.path(), "pet.g6", PETERSEN);
    let args = ["prob", pet.to_str().unwrap(), "--trials", "5000", "--seed", "11"];
    let a = run(&args);
    let b = bin().args(args).env("FRACCHROM_THREADS", "1").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 11);
    assert_eq!(v["violations"], 0);
}

#[test]
fn two_factor_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let pet = write(dir.path(), "pet.g6", PETERSEN);
    let out = run(&["two-factor", pet.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let tf = json(&out)["two_factor"].to_string();
    let tfp = write(dir.path(), "tf.json", &tf);
    let a = run(&["prob", pet.to_str().unwrap()]);
    let b = run(&["prob", pet.to_str().unwrap(), "--two-factor", tfp.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn chif_golden_values() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let pet = write(dir.path(), "pet.g6", PETERSEN);
    assert_eq!(json(&run(&["chif", c5.to_str().unwrap()]))["chi_f"], "5/2");
    let v = json(&run(&["chif", pet.to_str().unwrap()]));
    assert_eq!(v["chi_f"], "5/2");
    assert_eq!(v["verdict"]["valid"], true);
}

#[test]
fn certify_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let pet = write(dir.path(), "pet.g6", PETERSEN);
    let cert = dir.path().join("cert.json");
    let out = run(&["certify", pet.to_str().unwrap(), "--out", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["bound"], "32/11");
    assert_eq!(v["verdict"]["valid"], true);
    let out = run(&["verify", pet.to_str().unwrap(), cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let c5 = write(dir.path(), "c5.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let out = run(&["verify", c5.to_str().unwrap(), cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certify_refuses_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.txt", "3 3\n0 1\n1 2\n2 0\n");
    assert_eq!(run(&["certify", tri.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn corpus_rows() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a_pet.g6", PETERSEN);
    write(dir.path(), "b_c5.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let out = run(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["min_marginal"], "117/320");
    assert_eq!(rows[1]["chi_f"], "5/2");
    assert!(rows[1]["min_marginal"].is_null());
}

#[test]
fn text_format() {
    let dir = tempfile::tempdir().unwrap();
    let pet = write(dir.path(), "pet.g6", PETERSEN);
    let out = run(&["chif", pet.to_str().unwrap(), "--format", "text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.lines().any(|l| l == "chi_f: \"5/2\""));
}
