use std::path::PathBuf;
use std::process::{Command, Output};

fn hopfcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfcheck")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hopfcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn generate_then_check() {
    let doc = scratch("z2.json");
    let report = scratch("z2-report.json");
    let out = hopfcheck(&["generate", "pair-example", "Z2", "-o", doc.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = hopfcheck(&["check", "action,pair", doc.to_str().unwrap(), "--report", report.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v.as_array().map(|a| a.len()), Some(2));
}

#[test]
fn reports_are_reproducible() {
    let doc = scratch("c3.json");
    assert!(hopfcheck(&["generate", "cyclic-graph", "3", "-o", doc.to_str().unwrap()]).status.success());
    let runs: Vec<String> = ["1", "3"]
        .iter()
        .map(|t| {
            let r = scratch(&format!("c3-{t}.json"));
            let out = hopfcheck(&["check", "fodc,connection", doc.to_str().unwrap(), "--parallel", t, "--report", r.to_str().unwrap()]);
            assert!(out.status.success());
            std::fs::read_to_string(r).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn dump_lists_presentations() {
    let doc = scratch("c3-dump.json");
    assert!(hopfcheck(&["generate", "cyclic-graph", "3", "-o", doc.to_str().unwrap()]).status.success());
    let out = hopfcheck(&["dump", doc.to_str().unwrap(), "--degree-bound", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().map(|a| a.len()), Some(8));
}

#[test]
fn malformed_input_fails() {
    let doc = scratch("broken.json");
    std::fs::write(&doc, "{\"schema_version\": 1, \"document\": {\"kind\": \"hopf\",").unwrap();
    let out = hopfcheck(&["check", "algebra", doc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn unknown_suite_and_wrong_kind_fail() {
    let doc = scratch("fz.json");
    assert!(hopfcheck(&["generate", "fuzzy-sphere", "1/2", "-o", doc.to_str().unwrap()]).status.success());
    assert!(!hopfcheck(&["check", "no-such-suite", doc.to_str().unwrap()]).status.success());
    assert!(!hopfcheck(&["check", "action", doc.to_str().unwrap()]).status.success());
    assert!(!hopfcheck(&["generate", "cyclic-graph", "2"]).status.success());
}
