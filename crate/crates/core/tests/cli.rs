use std::path::Path;
use std::process::{Command, Output};

use lieforge::lie::{read_structure, write_structure};

fn lieforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieforge")).args(args).env_remove("LIEFORGE_MAX_MEM_MB").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn construct_passes_and_is_reproducible() {
    let a = lieforge(&["construct", "f4"]);
    let b = lieforge(&["construct", "f4"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["command"], "construct");
    assert_eq!(v["seed"], 42);
    assert!(v.get("timing").is_none());
    assert!(v["claims"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn timing_is_opt_in() {
    let o = lieforge(&["--timing", "scan", "5", "6"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["timing"].is_number());
}

#[test]
fn report_file_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = lieforge(&["--report", path.to_str().unwrap(), "scan", "5", "10"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS ")));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["details"]["feasible"], serde_json::json!([5, 6, 8, 9, 10]));
}

#[test]
fn structure_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sp3.txt");
    let o = lieforge(&["construct", "sp3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let l = read_structure(&text).unwrap();
    assert_eq!(l.dim(), 21);
    assert_eq!(write_structure(&l), text);
    let v = lieforge(&["verify", path.to_str().unwrap(), "--full"]);
    assert_eq!(code(&v), 0);
}

fn tampered(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("bad.txt");
    let o = lieforge(&["construct", "sp3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&path).unwrap().replacen("\n0 1 4 1\n", "\n0 1 4 2\n", 1);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn failing_claims_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = tampered(dir.path());
    let o = lieforge(&["verify", path.to_str().unwrap(), "--full"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let jac = &v["claims"][0];
    assert_eq!(jac["status"], "fail");
    assert!(jac["witness"]["violation"].is_string());

    let o = lieforge(&["decompose", "D4", "halfspin+", "--power", "2", "--what", "trivial-mult", "--expect", "1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn usage_and_format_errors_exit_two() {
    assert_eq!(code(&lieforge(&["construct", "g2"])), 2);
    assert_eq!(code(&lieforge(&["scan", "3", "9"])), 2);
    assert_eq!(code(&lieforge(&["decompose", "Q3", "standard"])), 2);
    assert_eq!(code(&lieforge(&["--jobs", "0", "scan", "5", "6"])), 2);
    assert_eq!(code(&lieforge(&["frobnicate"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.txt");
    std::fs::write(&path, "lie-sc v1 dim=3\nlabels a,b\n").unwrap();
    let o = lieforge(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(code(&lieforge(&["verify", dir.path().join("missing").to_str().unwrap()])), 2);
}

#[test]
fn memory_cap_exits_three() {
    let o = Command::new(env!("CARGO_BIN_EXE_lieforge"))
        .args(["decompose", "D8", "halfspin+", "--power", "4", "--what", "trivial-mult"])
        .env("LIEFORGE_MAX_MEM_MB", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn decompose_expectation() {
    let o = lieforge(&["decompose", "D6", "halfspin+", "--power", "2", "--what", "trivial-mult", "--expect", "1"]);
    assert_eq!(code(&o), 0);
    let o = lieforge(&["decompose", "B1", "hw=3", "--power", "2", "--functor", "sym", "--what", "full"]);
    assert_eq!(code(&o), 0);
}
