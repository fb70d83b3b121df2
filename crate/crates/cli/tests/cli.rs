use std::process::{Command, Output};

use serde_json::Value;

fn trivext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trivext"))
        .args(args)
        .env_remove("TRIVEXT_SUBSPACE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = trivext(&all);
    let v = serde_json::from_str(&stdout(&o)).expect("one JSON document");
    (v, o.status.code().unwrap())
}

#[test]
fn check_reports_qf_and_non_qf() {
    let o = trivext(&["check", "trivext(gf(2), free(1))"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("local: true"));
    assert!(out.contains("QF: true"));

    let (v, code) = json(&["check", "trivext(gf(2), free(2))"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["report"]["is_qf"], Value::Bool(false));
    assert!(!v["result"]["report"]["qf_witness"].is_null());
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(trivext(&["check", "gf(4)"]).status.code(), Some(2));
    assert_eq!(trivext(&["check", "trivext(gf(2), free(1)"]).status.code(), Some(2));
    assert_eq!(trivext(&["check", "prod(gf(2), gf(3))"]).status.code(), Some(2));
    assert_eq!(trivext(&["verify-paper", "--case", "nonexistent"]).status.code(), Some(2));
}

#[test]
fn classify_kinds() {
    let (v, _) = json(&["classify", "trivext(gf(2), free(2))"]);
    assert_eq!(v["result"]["verdict"]["kind"], "Infinite");
    let (v, _) = json(&["classify", "trivext(gf(3), free(1))"]);
    assert_eq!(v["result"]["verdict"]["kind"], "Zero");
}

#[test]
fn periodic_resolution() {
    let (v, code) = json(&[
        "resolve",
        "trivext(gf(2), free(1))",
        "--module",
        "quotfree(1, [(0,1)])",
        "--length",
        "10",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["betti"], serde_json::json!(vec![1; 11]));
    assert_eq!(v["result"]["pd"], "ExceedsBound");
}

#[test]
fn ext_and_tor() {
    let r = "trivext(gf(2), free(1))";
    let k = "quotfree(1, [(0,1)])";
    let (v, _) = json(&["ext", r, "--module", k, "--i", "1"]);
    assert_eq!(v["result"]["dim"], 0);
    let (v, _) = json(&["tor", r, "--module", k, "--other", k, "--i", "1"]);
    assert_eq!(v["result"]["dim"], 1);
}

#[test]
fn sgp_exit_codes() {
    let (v, code) = json(&["sgp", "quot(2, [0,0,1])", "--module", "quotfree(1, [(0,1)])"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["result"]["verdict"], "Yes");
    let o = trivext(&["sgp", "prod(gf(2), gf(2))", "--module", "regular"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn cap_exceeded_exits_3() {
    // a 2^20-element ring past a 2^10 element cap: unit counting is unavailable, ideal
    // enumeration in classify needs more subspaces than the cap allows
    let o = Command::new(env!("CARGO_BIN_EXE_trivext"))
        .args(["classify", "prod(gf(2), trivext(gf(2), free(8)))", "--max-elements", "1024"])
        .env("TRIVEXT_SUBSPACE_CAP", "16")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn file_arguments() {
    let dir = std::env::temp_dir().join(format!("trivext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (v, _) = json(&["serialize", "quot(2, [0,0,1])", "--module", "quotfree(1, [(0,1)])"]);
    let ring_path = dir.join("ring.json5");
    let module_path = dir.join("module.json5");
    std::fs::write(&ring_path, v["result"]["ring"].as_str().unwrap()).unwrap();
    std::fs::write(&module_path, v["result"]["module"].as_str().unwrap()).unwrap();
    let ring_arg = format!("@{}", ring_path.display());
    let module_arg = format!("@{}", module_path.display());
    let (v, code) = json(&["sgp", &ring_arg, "--module", &module_arg]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["result"]["verdict"], "Yes");
    assert_eq!(trivext(&["check", "@/nonexistent/ring"]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn transfer_reports() {
    let (v, code) = json(&[
        "transfer",
        "sgp-forward",
        "quot(2, [0,0,1])",
        "--e",
        "regular",
        "--module",
        "quotfree(1, [(0,1)])",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["report"]["implication_holds"], true);
    let o = trivext(&["transfer", "sgi", "gf(2)", "--e", "free(1)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn single_case_and_determinism() {
    let a = trivext(&["--format", "json", "verify-paper", "--case", "ggldim_kxk_zero"]);
    let b = trivext(&["--format", "json", "verify-paper", "--case", "ggldim_kxk_zero"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["cases"][0]["status"], "pass");
    assert!(v.get("timings").is_none());

    let t = trivext(&["--format", "json", "--timings", "verify-paper", "--case", "ggldim_kxk_zero"]);
    let v: Value = serde_json::from_slice(&t.stdout).unwrap();
    assert!(v["timings"]["total_seconds"].is_number());
}
