use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn binuc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binuc"))
        .args(args)
        .output()
        .expect("spawn binuc")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("binuc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn verdict<'a>(r: &'a Value, name: &str) -> &'a str {
    r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))["verdict"]
        .as_str()
        .unwrap()
}

#[test]
fn gen_fig2_writes_twelve_elements() {
    let path = scratch("fig2.json");
    let out = binuc(&["gen", "--family", "fig2", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 12);
}

#[test]
fn gen_a3_has_six_indecomposables() {
    let out = binuc(&["gen", "--family", "an", "--n", "3"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["indecomposables"].as_array().unwrap().len(), 6);
}

#[test]
fn gen_chain_one() {
    let out = binuc(&["gen", "--family", "chain", "--n", "1"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 1);
}

#[test]
fn gen_rejects_bad_arguments() {
    assert_eq!(binuc(&["gen", "--family", "nope"]).status.code(), Some(2));
    assert_eq!(binuc(&["gen", "--family", "chain"]).status.code(), Some(2));
    assert_eq!(
        binuc(&["gen", "--family", "an", "--n", "3", "--orientation", "<"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(binuc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn check_fig2_binuclear_fails_with_witness() {
    let out = binuc(&["check", &fixture("fig2.json"), "--suite", "binuclear"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(verdict(&r, "ni_meet"), "fail");
    let ni = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "ni_meet")
        .unwrap();
    assert_eq!(
        ni["witness"]["first"]["pair"],
        serde_json::json!(["[g,a]", "[h,b]"])
    );
    assert_eq!(ni["witness"]["first"]["witness"], "[bot,c]");
    for c in r["checks"].as_array().unwrap() {
        if c["verdict"] == "fail" {
            assert!(c.get("witness").is_some());
        }
    }
}

#[test]
fn check_a2_all_passes() {
    let out = binuc(&["check", &fixture("a2.json"), "--suite", "all"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let r = report(&out);
    assert_eq!(r["summary"]["binuclear_intervals"], 11);
    assert!(r["elapsed_ms"].is_u64());
    assert_eq!(r["target"], "A2");
}

#[test]
fn check_empty_file_is_input_error() {
    let path = scratch("empty.json");
    std::fs::write(&path, "").unwrap();
    assert_eq!(
        binuc(&["check", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        binuc(&["check", "/nonexistent/file.json"]).status.code(),
        Some(2)
    );
    let path = scratch("other.json");
    std::fs::write(&path, "{\"x\": 1}").unwrap();
    assert_eq!(
        binuc(&["check", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn check_unknown_suite_is_usage_error() {
    assert_eq!(
        binuc(&["check", &fixture("a2.json"), "--suite", "nope"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn max_indec_env_caps_enumeration() {
    let out = Command::new(env!("CARGO_BIN_EXE_binuc"))
        .args(["check", &fixture("a3.json")])
        .env("BINUC_MAX_INDEC", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceed"));
}

#[test]
fn text_format() {
    let out = binuc(&[
        "check",
        &fixture("fig1.json"),
        "--suite",
        "binuclear",
        "--format",
        "text",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL binuclear_lattice"));
    assert!(text.contains("[bot,top]"));
}

#[test]
fn check_is_deterministic() {
    let run = || {
        let mut r = report(&binuc(&[
            "check",
            &fixture("a3_zigzag.json"),
            "--seed",
            "9",
        ]));
        r["elapsed_ms"] = Value::Null;
        r
    };
    assert_eq!(run(), run());
}

#[test]
fn shipped_fixtures_complete_quickly() {
    let start = std::time::Instant::now();
    for f in [
        "fig1.json",
        "fig2.json",
        "a1.json",
        "a2.json",
        "a3.json",
        "weak_order3.json",
    ] {
        let code = binuc(&["check", &fixture(f)]).status.code();
        assert!(matches!(code, Some(0) | Some(1)), "{f}");
    }
    assert!(start.elapsed().as_secs() < 10);
}

fn edge_count(dot: &str) -> usize {
    dot.lines().filter(|l| l.contains("->")).count()
}

fn node_count(dot: &str) -> usize {
    dot.lines().filter(|l| l.contains("[label=")).count()
}

#[test]
fn order_a2_dot() {
    let path = scratch("a2.dot");
    let out = binuc(&[
        "order",
        &fixture("a2.json"),
        "--dot",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert_eq!(node_count(&dot), 11);
    assert_eq!(edge_count(&dot), 14);
    assert!(dot.contains("dim 0") && dot.contains("dim 2"));
}

#[test]
fn order_chain3_is_a_path() {
    let path = scratch("chain3.json");
    binuc(&[
        "gen",
        "--family",
        "chain",
        "--n",
        "3",
        "-o",
        path.to_str().unwrap(),
    ]);
    let out = binuc(&["order", path.to_str().unwrap()]);
    assert!(out.status.success());
    let dot = String::from_utf8_lossy(&out.stdout);
    assert_eq!(node_count(&dot), 5);
    assert_eq!(edge_count(&dot), 4);
}

#[test]
fn order_fig1_uses_binuclear_carrier() {
    let out = binuc(&["order", &fixture("fig1.json")]);
    assert!(out.status.success());
    let dot = String::from_utf8_lossy(&out.stdout);
    assert_eq!(node_count(&dot), 19);
    assert!(!dot.contains("\"[bot,top]\""));
}
