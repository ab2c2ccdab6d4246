use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn contra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contra")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    })
}

struct Fixture {
    dir: TempDir,
    rho: String,
    w: String,
    v: String,
}

fn fixture() -> Fixture {
    let dir = TempDir::new().unwrap();
    let f2 = json!({"Fp": 2});
    let rho = write(dir.path(), "rho.json", &json!({"field": f2, "catalog": "divided_power_frobenius", "m": 4, "j": 2}));
    let w = write(
        dir.path(),
        "w.json",
        &json!({"coalgebra": {"field": f2, "catalog": "divided_power", "n": 2}, "catalog": "free", "d": 1}),
    );
    let v = write(
        dir.path(),
        "v.json",
        &json!({"coalgebra": {"field": f2, "catalog": "divided_power", "n": 4}, "catalog": "free", "d": 1}),
    );
    Fixture { dir, rho, w, v }
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn verify_grouplike() {
    let dir = TempDir::new().unwrap();
    let c = write(dir.path(), "c.json", &json!({"field": "Q", "catalog": "grouplike", "n": 3}));
    let out = contra(&["verify", &c]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["ok"], json!(true));
    assert_eq!(r["field"], json!("Q"));
}

#[test]
fn adjoint_check_passes() {
    let fx = fixture();
    let out = contra(&["adjoint-check", "--rho", &fx.rho, "--W", &fx.w, "--V", &fx.v]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["adjunction"]["holds"], json!(true));
}

#[test]
fn tower_for_lambda_one() {
    let dir = TempDir::new().unwrap();
    let battery = write(dir.path(), "battery.json", &json!(["L0", "L1", "L2", "L3", "P0"]));
    let out = contra(&["tower", "--lambda", "1", "--mmax", "3", "--battery", &battery]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["dims"], json!([2, 8, 32]));
    assert_eq!(r["heads_ok"], json!(true));
}

#[test]
fn output_is_deterministic() {
    let fx = fixture();
    let args = ["--seed", "7", "exactness", "--rho", &fx.rho, "--mid", &fx.w, "--samples", "4"];
    let (a, b) = (contra(&args), contra(&args));
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn schema_error_reports_a_pointer() {
    let dir = TempDir::new().unwrap();
    let c = write(dir.path(), "c.json", &json!({"field": "Q", "dim": "two", "delta": [], "epsilon": []}));
    let out = contra(&["verify", &c]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["pointer"], json!("/inputs/file/dim"));
}

#[test]
fn field_mismatch_is_an_input_error() {
    let fx = fixture();
    let out = contra(&["--field", "Q", "induce", "--rho", &fx.rho, "--W", &fx.w]);
    assert_eq!(out.status.code(), Some(2));
    let q = write(
        fx.dir.path(),
        "wq.json",
        &json!({"coalgebra": {"field": "Q", "catalog": "divided_power", "n": 2}, "catalog": "free", "d": 1}),
    );
    assert_eq!(contra(&["induce", "--rho", &fx.rho, "--W", &q]).status.code(), Some(2));
}

#[test]
fn wrong_expectation_fails() {
    let dir = TempDir::new().unwrap();
    let rho = write(dir.path(), "rho.json", &json!({"field": {"Fp": 3}, "catalog": "grouplike_quotient", "n": 3, "m": 2}));
    let mid = write(
        dir.path(),
        "mid.json",
        &json!({"coalgebra": {"field": {"Fp": 3}, "catalog": "grouplike", "n": 2}, "catalog": "free", "d": 2}),
    );
    let exact = contra(&["exactness", "--rho", &rho, "--mid", &mid, "--expect", "exact"]);
    assert_eq!(exact.status.code(), Some(0), "{}", String::from_utf8_lossy(&exact.stderr));
    let out = contra(&["exactness", "--rho", &rho, "--mid", &mid, "--expect", "not-exact"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["ok"], json!(false));
}

#[test]
fn pretty_leaves_stdout_alone() {
    let fx = fixture();
    let plain = contra(&["induce", "--rho", &fx.rho, "--W", &fx.w]);
    let pretty = contra(&["--pretty", "induce", "--rho", &fx.rho, "--W", &fx.w]);
    assert_eq!(plain.stdout, pretty.stdout);
    assert!(!pretty.stderr.is_empty());
}

#[test]
fn job_file_writes_its_output() {
    let fx = fixture();
    let job = json!({
        "command": "induce",
        "inputs": {"rho": "rho.json", "W": "w.json"},
        "output": "out.json",
        "seed": 3
    });
    let job_path = write(fx.dir.path(), "job.json", &job);
    let out = contra(&["run", &job_path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(path(&fx.dir, "out.json")).unwrap()).unwrap();
    assert_eq!(written["command"], json!("induce"));
    assert_eq!(written["seed"], json!(3));
    assert_eq!(written["inputs"]["rho"], json!("rho.json"));
}
