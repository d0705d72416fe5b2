use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn cylkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cylkit")).args(args).output().expect("binary runs")
}

fn cylkit_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cylkit"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn monk_generation_and_frame_check() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g33.json");
    let listing = dir.path().join("g33.txt");
    let o = cylkit(&["gen", "monk", "--m", "3", "--n", "3", "-o", p(&g), "--listing", p(&listing)]);
    assert_eq!(code(&o), 0);
    let doc: Value = serde_json::from_str(&fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(doc["atoms"].as_array().unwrap().len(), 34);
    assert_eq!(fs::read_to_string(&listing).unwrap().lines().count(), 34);

    let o = cylkit(&["check", "ca-frame", p(&g)]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["conditions"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn parameter_errors_are_usage_errors() {
    assert_eq!(code(&cylkit(&["gen", "monk", "--m", "2", "--n", "3"])), 2);
    assert_eq!(code(&cylkit(&["gen", "monk", "--m", "3"])), 2);
    assert_eq!(code(&cylkit(&["frobnicate"])), 2);
    assert_eq!(code(&cylkit(&["check", "ca-frame", "/nonexistent/file.json"])), 2);
    assert_eq!(code(&cylkit(&["gen", "set-algebra", "--dim", "5", "--base", "2"])), 2);
}

#[test]
fn export_round_trip_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let c = dir.path().join("c.json");
    assert_eq!(code(&cylkit(&["gen", "monk", "--m", "3", "--n", "3", "--johnson", "-o", p(&a)])), 0);
    assert_eq!(code(&cylkit(&["export", p(&a), "-o", p(&b)])), 0);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    assert_eq!(code(&cylkit(&["gen", "hh", "--n", "3", "--r", "1", "--psi-cap", "3", "-o", p(&c)])), 0);
    let again = cylkit(&["export", p(&c)]);
    assert_eq!(again.stdout, fs::read(&c).unwrap());

    let dot = cylkit(&["export", p(&a), "--format", "dot"]);
    assert_eq!(code(&dot), 0);
    assert!(String::from_utf8(dot.stdout).unwrap().starts_with("graph atoms {"));
}

#[test]
fn failed_checks_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let hh = dir.path().join("hh.json");
    assert_eq!(code(&cylkit(&["gen", "hh", "--n", "3", "--r", "2", "--psi-cap", "3", "-o", p(&hh)])), 0);
    let o = cylkit(&["check", "ra-axioms", p(&hh)]);
    assert_eq!(code(&o), 1);
    let report = json(&o);
    let failing: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["associativity"]);

    let o = cylkit(&["iso-check", "--msmall", "3", "--mbig", "4", "--n", "3", "--r", "1", "--psi-cap", "2"]);
    assert_eq!(code(&o), 1);
    let o = cylkit(&["iso-check", "--msmall", "3", "--mbig", "4", "--n", "4", "--r", "1", "--psi-cap", "1"]);
    assert_eq!(code(&o), 0);
    let report = json(&o);
    assert_eq!(report["transform"], "iso-check");
    assert_eq!(report["passed"], true);
}

#[test]
fn transforms_emit_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cs = dir.path().join("cs3.json");
    let q = dir.path().join("q.json");
    assert_eq!(code(&cylkit(&["gen", "set-algebra", "--dim", "3", "--base", "2", "-o", p(&cs)])), 0);

    let o = cylkit(&["nr", p(&cs), "--gamma", "0,1", "-o", p(&q)]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["passed"], true);
    let quotient: Value = serde_json::from_str(&fs::read_to_string(&q).unwrap()).unwrap();
    assert_eq!(quotient["atoms"].as_array().unwrap().len(), 4);

    let o = cylkit(&["rd", p(&cs), "--rho", "2,0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["dim"], 2);
    assert_eq!(code(&cylkit(&["rd", p(&cs), "--rho", "0,0"])), 2);

    let all: Vec<String> = (0..8).map(|a| a.to_string()).collect();
    let o = cylkit(&["rl", p(&cs), "--x", &all.join(",")]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["passed"], true);

    let o = cylkit(&["ra-reduct", p(&cs)]);
    assert_eq!(code(&o), 0);

    let split = dir.path().join("split.json");
    let map = dir.path().join("map.json");
    let o = cylkit(&["split", p(&cs), "--atom", "0", "--copies", "3", "-o", p(&split), "--map", p(&map)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let m: Value = serde_json::from_str(&fs::read_to_string(&map).unwrap()).unwrap();
    assert_eq!(m["embedding"][0].as_array().unwrap().len(), 3);
    // copies of an atom on a diagonal are no longer separated
    let o = cylkit(&["check", "ca-frame", p(&split)]);
    assert_eq!(code(&o), 1);
    let report = json(&o);
    let failed: Vec<&Value> = report["conditions"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert!(!failed.is_empty() && failed.iter().all(|c| c["family"] == "C7"));
}

#[test]
fn game_solve_budget_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let cs = dir.path().join("cs3.json");
    let dot = dir.path().join("open.dot");
    assert_eq!(code(&cylkit(&["gen", "set-algebra", "--dim", "3", "--base", "2", "-o", p(&cs)])), 0);
    let args = ["game", "solve", "--variant", "g", "--rounds", "2", "--structure", p(&cs), "--atom", "2"];
    let o = cylkit(&[&args[..], &["--dot", p(&dot)]].concat());
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["winner"], "exists");
    assert!(fs::read_to_string(&dot).unwrap().starts_with("graph network {"));

    // same answer on one thread
    let one = cylkit(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(one.stdout, o.stdout);

    let refused = cylkit_env(&args, "CYLKIT_BUDGET", "5");
    assert_eq!(code(&refused), 3);
    assert_eq!(code(&cylkit_env(&args, "CYLKIT_BUDGET", "lots")), 2);
    assert_eq!(code(&cylkit(&["game", "solve", "--variant", "f", "--rounds", "1", "--structure", p(&cs), "--atom", "0"])), 2);
    assert_eq!(code(&cylkit(&["game", "solve", "--variant", "ra", "--pebbles", "3", "--rounds", "1", "--structure", p(&cs), "--atom", "0"])), 2);
}

#[test]
fn ra_games_run_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let z = dir.path().join("z4.json");
    assert_eq!(code(&cylkit(&["gen", "cyclic", "--k", "4", "-o", p(&z)])), 0);
    let o = cylkit(&["game", "solve", "--variant", "ra", "--pebbles", "3", "--rounds", "2", "--structure", p(&z), "--atom", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["winner"], "exists");

    let o = cylkit(&["check", "hyperbasis", p(&z), "--m", "3", "--n-wide", "3", "--labels", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["hypernetworks"], 16);
}

#[test]
fn played_games_replay() {
    let dir = tempfile::tempdir().unwrap();
    let cs = dir.path().join("cs3.json");
    let t = dir.path().join("t.json");
    let fin = dir.path().join("final.dot");
    assert_eq!(code(&cylkit(&["gen", "set-algebra", "--dim", "3", "--base", "2", "-o", p(&cs)])), 0);
    let game = ["--variant", "g", "--rounds", "2", "--structure", p(&cs), "--atom", "2"];
    let mut child = Command::new(env!("CARGO_BIN_EXE_cylkit"))
        .args([&["game", "play"][..], &game, &["--side", "forall", "--transcript", p(&t), "--dot", p(&fin)]].concat())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"x\n0\n0\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("illegal choice 'x'"));
    assert!(text.contains("winner: exists"));
    assert!(fs::read_to_string(&fin).unwrap().contains("shape=box"));

    let o = cylkit(&[&["game", "replay"][..], &game, &["--transcript", p(&t)]].concat());
    assert_eq!(code(&o), 0);
    let saved: Value = serde_json::from_str(&fs::read_to_string(&t).unwrap()).unwrap();
    assert_eq!(json(&o)["final_position"], saved["final_position"]);

    let mut forged = saved.clone();
    forged["winner"] = Value::from("forall");
    fs::write(&t, forged.to_string()).unwrap();
    assert_eq!(code(&cylkit(&[&["game", "replay"][..], &game, &["--transcript", p(&t)]].concat())), 1);
}

#[test]
fn suite_subset_is_deterministic() {
    let a = cylkit(&["suite", "--only", "4,8,12"]);
    let b = cylkit(&["suite", "--only", "4,8,12"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.ends_with("3/3 passed\n"));
    assert_eq!(code(&cylkit(&["suite", "--only", "13"])), 2);
    assert_eq!(code(&cylkit(&["suite", "--only", "3"])), 1);
}
