//! End-to-end runs of the `indelcover` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use indel_cover::{enumerate_words, Alphabet, Code};
use indel_cover_cli::codefile;
use proptest::prelude::*;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indelcover"))
        .arg("--compact")
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn balls_command() {
    let out = run(&["balls", "--q", "2", "--n", "3", "--t", "1", "--dir", "ins"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["outputs"]["size"], "5");

    let out = run(&["balls", "--center", "0101", "--t", "1", "--dir", "del", "--list"]);
    let v = json(&out);
    assert_eq!(v["outputs"]["size"], "4");
    assert_eq!(v["outputs"]["elements"].as_array().unwrap().len(), 4);

    let out = run(&["balls", "--center", "0101", "--t", "9", "--dir", "del"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds"));
}

#[test]
fn bounds_command() {
    let value = |args: &[&str]| json(&run(args))["outputs"]["bound"].clone();
    let b = value(&["bounds", "--q", "2", "--n", "4", "--R", "1", "--dir", "del", "--kind", "general"]);
    assert_eq!(b["value"], "31/15");
    assert_eq!(b["ceiling"], "3");
    let b = value(&["bounds", "--q", "2", "--n", "2", "--R", "1", "--dir", "ins"]);
    assert_eq!(b["value"], "2");
    let b = value(&["bounds", "--q", "2", "--n", "4", "--R", "1", "--dir", "del", "--kind", "closed"]);
    assert_eq!(b["value"], "8/5");
    let out = run(&["bounds", "--q", "2", "--n", "4", "--R", "1", "--dir", "ins", "--kind", "closed"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let vt = dir.path().join("vt41.code");
    let out = run(&["construct", "vt", "--n", "4", "--a", "1", "-o", path_str(&vt)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&vt).unwrap(), "q=2 n=4\n0101\n1000\n1110\n");
    let v = json(&run(&["verify", path_str(&vt), "--R", "1", "--dir", "del"]));
    assert_eq!(v["verification"]["covered"], true);

    let nb = dir.path().join("c.code");
    let out = run(&["construct", "nbvt", "--q", "4", "--n", "3", "--a", "0", "--b", "0", "-o", path_str(&nb)]);
    assert_eq!(json(&out)["verification"]["covered"], true);

    let r = dir.path().join("r.code");
    let out = run(&["construct", "rand1ins", "--q", "2", "--n", "13", "--seed", "7", "-o", path_str(&r)]);
    let v = json(&out);
    let size = v["outputs"]["size"].as_u64().unwrap();
    assert!(size * 15 <= 7 << 14);
    assert_eq!(v["verification"]["covered"], true);
    assert_eq!(v["parameters"]["seed"], 7);
    assert_eq!(codefile::load(&r).unwrap().len() as u64, size);
}

#[test]
fn verify_reports_witness_and_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("m.code");
    fs::write(&f, "q=2 n=2\n11\n").unwrap();
    let out = run(&["verify", path_str(&f), "--R", "1", "--dir", "ins"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verification"]["covered"], false);
    assert_eq!(v["verification"]["witness_uncovered"], "000");

    fs::write(&f, "q=2 n=2\n11\n101\n").unwrap();
    let out = run(&["verify", path_str(&f), "--R", "1", "--dir", "ins"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn search_command() {
    let v = json(&run(&["search", "--q", "2", "--n", "2", "--R", "1", "--dir", "ins"]));
    assert_eq!(v["outputs"]["k"], 2);
    assert_eq!(v["outputs"]["code"], serde_json::json!(["00", "11"]));
    let v = json(&run(&["search", "--q", "2", "--n", "4", "--R", "1", "--dir", "del"]));
    assert_eq!(v["outputs"]["k"], 3);
    let out = run(&["search", "--q", "2", "--n", "5", "--R", "1", "--dir", "ins", "--node-budget", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["outputs"]["status"], "budget_exhausted");
    let iv = v["outputs"]["interval"].as_array().unwrap();
    assert!(iv[0].as_u64() <= iv[1].as_u64());
}

#[test]
fn randomized_commands_need_a_seed() {
    let out = run(&["construct", "rand1ins", "--q", "2", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_repeat_apart_from_wall_time() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for (i, threads) in ["1", "3"].iter().enumerate() {
        let f = dir.path().join(format!("{i}.code"));
        let out = run(&[
            "--threads", threads, "construct", "randRdel", "--q", "2", "--n", "9", "--R", "2", "--seed", "3", "-o",
            path_str(&f),
        ]);
        let mut v = json(&out);
        let obj = v.as_object_mut().unwrap();
        assert!(obj.remove("wall_time_ms").is_some());
        obj["outputs"].as_object_mut().unwrap().remove("file");
        reports.push((v, fs::read(&f).unwrap()));
    }
    assert_eq!(reports[0], reports[1]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn save_load_save_is_identical(q in 2u32..=12, n in 0usize..=4, picks in prop::collection::vec(any::<u32>(), 0..20)) {
        let alphabet = Alphabet::new(q).unwrap();
        let words: Vec<_> = enumerate_words(q, n).unwrap().collect();
        let code = Code::from_words(alphabet, n, picks.iter().map(|&p| words[p as usize % words.len()].clone())).unwrap();
        let text = codefile::render(&code);
        let back = codefile::parse(&text).unwrap();
        prop_assert_eq!(&back, &code);
        prop_assert_eq!(codefile::render(&back), text);
    }
}
