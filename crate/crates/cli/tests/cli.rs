use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn arrfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrfree"))
        .args(args)
        .env_remove("ARRFREE_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(args: &[&str]) -> Value {
    let mut args = args.to_vec();
    args.push("--json");
    let out = arrfree(&args);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("arrfree-cli-{}-{name}", std::process::id()))
}

#[test]
fn certify_exit_codes() {
    let free = arrfree(&["certify", &path("six_lines_a1_m2.json")]);
    assert_eq!(code(&free), 0);
    assert!(String::from_utf8_lossy(&free.stdout).contains("(2, 2, 3)"));
    assert_eq!(code(&arrfree(&["certify", &path("two_heavy.json")])), 10);
    assert_eq!(code(&arrfree(&["certify", &path("braid.json")])), 20);
}

#[test]
fn certify_json_verdicts() {
    let r = json(&["certify", &path("six_lines_a1_m2.json")]);
    assert_eq!(r["result"]["verdict"]["kind"], "Free");
    assert_eq!(r["result"]["verdict"]["exponents"], serde_json::json!([2, 2, 3]));
    let cert = &r["result"]["certificate"];
    assert_eq!(cert["dispatch_order"][0], "Rank2Base");
    assert_eq!(cert["proof"]["rule"], "LocallyHeavyRestriction");

    let braid = json(&["certify", &path("braid.json")]);
    assert_eq!(braid["result"]["verdict"]["kind"], "Inconclusive");
    let with_oracle = json(&["certify", &path("braid.json"), "--oracle"]);
    assert_eq!(with_oracle["result"]["verdict"]["exponents"], serde_json::json!([1, 2, 3]));
    assert_eq!(with_oracle["result"]["certificate"]["proof"]["rule"], "SaitoBasis");
}

#[test]
fn only_rule_isolates_a_step() {
    let r = json(&["certify", &path("two_heavy.json"), "--only-rule", "TwoLocallyHeavy"]);
    assert_eq!(r["result"]["verdict"]["kind"], "NonFree");
    assert_eq!(r["result"]["certificate"]["proof"]["rule"], "TwoLocallyHeavy");
    let out = arrfree(&["certify", &path("two_heavy.json"), "--only-rule", "TwoLocallyHeavy"]);
    assert_eq!(code(&out), 10);
    // the flag step alone says nothing about a non-simple input
    let out = arrfree(&["certify", &path("two_heavy.json"), "--only-rule", "FlagEquality"]);
    assert_eq!(code(&out), 20);
    assert_eq!(code(&arrfree(&["certify", &path("two_heavy.json"), "--only-rule", "Bogus"])), 2);
}

#[test]
fn parse_errors_exit_2() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"dim":2,"hyperplanes":[[1,0],[2,0]]}"#).unwrap();
    for cmd in ["certify", "lattice", "b2", "oracle"] {
        let out = arrfree(&[cmd, bad.to_str().unwrap()]);
        assert_eq!(code(&out), 2, "{cmd}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("coincide"));
    }
    assert_eq!(code(&arrfree(&["certify", "/nonexistent/file.json"])), 2);
    std::fs::remove_file(bad).unwrap();
}

#[test]
fn lattice_counts() {
    let count = |f: &str| {
        let r = json(&["lattice", &path(f)]);
        r["result"]["levels"][1]["count"].as_u64().unwrap()
    };
    assert_eq!(count("braid.json"), 7);
    assert_eq!(count("boolean.json"), 3);
    assert_eq!(count("rank4_flag.json"), 28);
    let r = json(&["lattice", &path("rank4_flag.json"), "--max-codim", "2"]);
    assert_eq!(r["result"]["levels"].as_array().unwrap().len(), 2);
}

#[test]
fn b2_totals() {
    let total = |f: &str| json(&["b2", &path(f)])["result"]["total"].as_u64().unwrap();
    assert_eq!(total("rank4_flag.json"), 36);
    assert_eq!(total("six_lines_a1_m2.json"), 16);
    assert_eq!(total("boolean_234.json"), 26);
    let r = json(&["b2", &path("six_lines_a1_m2.json"), "--away", "5"]);
    assert_eq!(r["result"]["away"]["value"], 6);
    assert_eq!(r["result"]["away"]["local_sum"], 6);
}

fn sweep_rows(params: &[&str]) -> Vec<Value> {
    let template = path("six_lines_template.json");
    let mut args = vec!["sweep", template.as_str()];
    for p in params {
        args.extend(["--param", p]);
    }
    json(&args)["rows"].as_array().unwrap().clone()
}

#[test]
fn sweep_reproduces_the_boundary() {
    let rows = sweep_rows(&["a=1..3", "m0=2*a"]);
    assert_eq!(rows.len(), 3);
    let kinds: Vec<_> = rows.iter().map(|r| r["verdict"]["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["Free", "NonFree", "NonFree"]);
    for (r, a) in rows.iter().zip(1..) {
        assert_eq!(r["params"]["a"], a);
    }

    for r in sweep_rows(&["a=1", "m0=2..5"]) {
        let m0 = r["params"]["m0"].as_u64().unwrap();
        let mut want = vec![m0, 2, 3];
        want.sort();
        assert_eq!(r["verdict"]["exponents"], serde_json::json!(want));
    }

    let rejected = sweep_rows(&["a=2", "m0=3"]);
    assert_eq!(rejected[0]["status"], "rejected");
    assert!(rejected[0]["note"].as_str().unwrap().contains("m0 >= 2*a"));
    assert!(rejected[0].get("verdict").is_none());
}

#[test]
fn oracle_reports() {
    let r = json(&["oracle", &path("braid.json"), "--hilbert"]);
    assert_eq!(r["result"]["outcome"]["kind"], "FreeProven");
    assert_eq!(r["result"]["outcome"]["exponents"], serde_json::json!([1, 2, 3]));

    let r = json(&["oracle", &path("two_heavy.json"), "--hilbert", "--cap", "8"]);
    assert_eq!(r["result"]["outcome"]["kind"], "NonFreeProven");

    for f in ["two_heavy.json", "six_lines_a2_m4.json", "boolean_234.json"] {
        let r = json(&["oracle", &path(f), "--degree", "1"]);
        assert_eq!(r["result"]["dimension"], 0, "{f}");
    }
}

#[test]
fn oracle_cap_and_essentiality() {
    let out = arrfree(&["oracle", &path("braid.json"), "--hilbert", "--cap", "40"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));

    let out = arrfree(&["oracle", &path("pencil_nonessential.json")]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--essentialize"));
    let r = json(&["oracle", &path("pencil_nonessential.json"), "--essentialize", "--hilbert"]);
    assert_eq!(r["result"]["nonessential_dim"], 1);
    assert_eq!(r["result"]["outcome"]["exponents"], serde_json::json!([2, 2]));
}

#[test]
fn seed_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_arrfree"))
        .args(["oracle", &path("braid.json"), "--hilbert", "--json"])
        .env("ARRFREE_SEED", "77")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["result"]["seed"], 77);
    let r = json(&["oracle", &path("braid.json"), "--hilbert", "--seed", "5"]);
    assert_eq!(r["result"]["seed"], 5);
}

#[test]
fn json_output_is_reproducible() {
    for f in ["two_heavy.json", "rank4_flag.json", "braid.json"] {
        let a = arrfree(&["certify", &path(f), "--json", "--oracle", "--seed", "3"]);
        let b = arrfree(&["certify", &path(f), "--json", "--oracle", "--seed", "3"]);
        assert_eq!(a.stdout, b.stdout, "{f}");
    }
    let plain = json(&["b2", &path("braid.json")]);
    assert!(plain.get("timing_ms").is_none());
    let timed = json(&["b2", &path("braid.json"), "--timing"]);
    assert!(timed["timing_ms"].is_number());
}

#[test]
fn certificate_round_trip() {
    let cert = scratch("cert.json");
    let out = arrfree(&["certify", &path("six_lines_a1_m3.json"), "--cert-out", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let out = arrfree(&["verify", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verified"));

    // a forged conclusion no longer re-derives
    let text = std::fs::read_to_string(&cert).unwrap();
    let forged = text.replacen("\"exponents\": [\n      2,", "\"exponents\": [\n      1,", 1);
    assert_ne!(forged, text);
    std::fs::write(&cert, forged).unwrap();
    assert_eq!(code(&arrfree(&["verify", cert.to_str().unwrap()])), 1);
    std::fs::remove_file(cert).unwrap();
}
