use serde_json::Value;
use std::process::{Command, Output};

fn gsp4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsp4")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn weights_report() {
    let out = gsp4(&["cm", "weights", "--k1", "4", "--k2", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["schema"], "gsp4-report/1");
    assert_eq!(v["pass"], true);
}

#[test]
fn json_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("gsp4-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let out = gsp4(&["--json", path.to_str().unwrap(), "hecke", "degeneracy", "--prime", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, report(&out));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn corrupted_factorization_exits_one() {
    let good = gsp4(&["lfactor", "check-factorization", "--prime", "2"]);
    assert_eq!(good.status.code(), Some(0));
    let bad = gsp4(&["lfactor", "check-factorization", "--prime", "2", "--corrupt"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(report(&bad)["pass"], false);
}

#[test]
fn inert_prime_is_an_error() {
    let out = gsp4(&["normrel", "identity", "--modulus", "(2+2i)", "--prime", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn norm_relation_at_a_split_prime() {
    let out = gsp4(&["normrel", "identity", "--modulus", "(2+2i)", "--prime", "5"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn eisenstein_field_via_disc() {
    let out = gsp4(&["rayclass", "--disc", "-3", "--modulus", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(gsp4(&["hecke", "satake"]).status.code(), Some(2));
    assert_eq!(gsp4(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn seed_is_deterministic() {
    let args = ["--seed", "7", "normrel", "qltwist", "--modulus", "(2+2i)", "--modulus-n", "(2+2i)(3+2i)", "--p", "3", "--prime", "5"];
    let a = gsp4(&args);
    let b = gsp4(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}
