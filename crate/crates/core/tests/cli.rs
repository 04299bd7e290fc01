use std::path::Path;
use std::process::{Command, Output};

fn dsbr(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dsbr"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn generated_games_simulate() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(dsbr(&["gen-game", "--kind", "random-matrix", "--actions1", "3", "--out", "m.json"], d).status.code(), Some(0));
    let s = json(&dsbr(&["simulate-matrix", "--game", "m.json", "--K", "2000", "--replications", "3", "--out", "run", "--json"], d));
    assert_eq!(s["n_replications"], 3);
    assert!(d.join("run/summary.json").exists());
    assert!(d.join("run/rep_002.csv").exists());

    let gen = ["gen-game", "--kind", "random-markov", "--states", "2", "--out", "g.json"];
    assert_eq!(dsbr(&gen, d).status.code(), Some(0));
    let s = json(&dsbr(&["simulate-markov", "--game", "g.json", "--K", "200", "--T", "3", "--json"], d));
    assert!(s["final_nash_gap"]["mean"].as_f64().unwrap().is_finite());
}

#[test]
fn seeds_reproduce_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    dsbr(&["gen-game", "--kind", "rock-paper-scissors", "--out", "r.json"], d);
    let run = ["simulate-matrix", "--game", "r.json", "--K", "3000", "--seed", "7", "--json"];
    assert_eq!(dsbr(&run, d).stdout, dsbr(&run, d).stdout);
}

#[test]
fn oracle_subcommands_report_json() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    dsbr(&["gen-game", "--kind", "appendix-d", "--out", "g.json"], d);
    std::fs::write(d.join("p.json"), r#"{"pi1":[[0.9,0.1],[0.9,0.1]],"pi2":[[1],[1]]}"#).unwrap();
    let m = json(&dsbr(&["mixing-time", "--game", "g.json", "--policy", "p.json", "--json"], d));
    assert_eq!(m["mixing_time"], 11);
    let v = json(&dsbr(&["value-iterate", "--game", "g.json", "--json"], d));
    assert!(v.is_object());
    let n = json(&dsbr(&["nash-gap", "--game", "g.json", "--policy", "p.json", "--json"], d));
    assert!(n.is_object());
    let c = json(&dsbr(&["check-conditions", "--game", "g.json", "--json"], d));
    assert!(c.is_object() || c.is_array());
}

#[test]
fn validation_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(dsbr(&["gen-game", "--kind", "random-markov", "--gamma", "1.5"], d).status.code(), Some(2));
    assert_eq!(dsbr(&["simulate-matrix", "--game", "missing.json"], d).status.code(), Some(2));
    assert_eq!(dsbr(&["no-such-command"], d).status.code(), Some(2));
    dsbr(&["gen-game", "--kind", "matching-pennies", "--out", "mp.json"], d);
    let strict = ["simulate-matrix", "--game", "mp.json", "--alpha", "2", "--h", "4", "--ratio", "0.5", "--strict-theory"];
    assert_eq!(dsbr(&strict, d).status.code(), Some(2));
}

#[test]
fn periodic_chain_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    dsbr(&["gen-game", "--kind", "appendix-d", "--out", "g.json"], d);
    std::fs::write(d.join("p.json"), r#"{"pi1":[[0,1],[0,1]],"pi2":[[1],[1]]}"#).unwrap();
    let out = dsbr(&["mixing-time", "--game", "g.json", "--policy", "p.json"], d);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("period"));
}
