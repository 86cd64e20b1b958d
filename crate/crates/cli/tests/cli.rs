use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fusionlab"));
    c.env_remove("FUSIONLAB_PRECISION");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", stdout(o)))
}

fn temp_doc(tag: &str, edit: impl FnOnce(&mut Value)) -> PathBuf {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/corpus/ising.json")).unwrap();
    let mut doc: Value = serde_json::from_str(&text).unwrap();
    edit(&mut doc);
    let path = std::env::temp_dir().join(format!("fusionlab-{tag}-{}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    path
}

fn corrupted() -> PathBuf {
    temp_doc("corrupted", |d| d["fusion"][2][2][1] = Value::from(2))
}

#[test]
fn modular_claim_on_fibonacci() {
    let o = run(&["check", "fibonacci.json", "--theorem", "1.2", "--assume", "modular", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let reports = v["reports"].as_array().unwrap();
    let tau = reports.iter().find(|r| r["subject"].as_str().unwrap().ends_with("X = tau")).unwrap();
    assert_eq!(tau["outcome"], "PASS");
    assert_eq!(tau["verdict"]["tier"], "INTEGRAL_EXACT");
    assert_eq!(tau["verdict"]["witness"], "x^2 - 5*x + 5");
}

#[test]
fn zero_isaacs_on_ising() {
    let o = run(&["isaacs", "ising.json", "--s", "0"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("[PASS] Def 5.1"));
}

#[test]
fn corrupted_input_is_an_input_error() {
    let path = corrupted();
    let o = bin().arg("check").arg(&path).output().unwrap();
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("associativity"));
}

#[test]
fn validate_reports_violations_and_verlinde_triple() {
    let path = corrupted();
    let o = bin().args(["validate", "--format", "json"]).arg(&path).output().unwrap();
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert!(v["data"]["violations"].as_array().unwrap().iter().any(|x| x["axiom"] == "associativity"));
    let mismatches = v["data"]["verlinde"]["mismatches"].as_array().unwrap();
    assert_eq!(mismatches.len(), 1);
    assert_eq!((mismatches[0]["i"].as_u64(), mismatches[0]["j"].as_u64(), mismatches[0]["k"].as_u64()), (Some(2), Some(2), Some(1)));
}

#[test]
fn negative_multiplicity_names_the_path() {
    let path = temp_doc("negative", |d| d["fusion"][1][2][2] = Value::from(-1));
    let o = bin().arg("validate").arg(&path).output().unwrap();
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("/fusion/1/2/2"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(code(&run(&["check", "ising", "--bogus"])), 3);
    assert_eq!(code(&run(&["frobnicate"])), 3);
    assert_eq!(code(&run(&["check", "no_such_ring"])), 3);
    assert_eq!(code(&run(&["isaacs", "ising", "--s", "-1"])), 3);
    assert_eq!(code(&run(&["check", "ising", "--precision", "8"])), 3);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["check", "ising", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["tool"], "fusionlab");
    assert_eq!(v["precision"], 256);
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn corpus_is_deterministic_and_passes() {
    let args = ["corpus", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let names: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["input"]["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(names.len() >= 14);
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn precision_from_environment() {
    let o = bin().env("FUSIONLAB_PRECISION", "128").args(["chartable", "ising", "--format", "json"]).output().unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["precision"], 128);
    let o = bin().env("FUSIONLAB_PRECISION", "128").args(["chartable", "ising", "--precision", "512", "--format", "json"]).output().unwrap();
    assert_eq!(json(&o)["precision"], 512);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("fusionlab-out-{}.txt", std::process::id()));
    let o = bin().args(["dual", "ising", "--out"]).arg(&path).output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("fusionlab"));
}

#[test]
fn character_classes_over_sign() {
    let o = run(&["classes", "rep_s3", "--subring", "1,sgn"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("n_dim = 3"));
}

#[test]
fn modular_command() {
    let o = run(&["modular", "ising", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(code(&run(&["modular", "rep_s3"])), 3);
}

#[test]
fn every_command_renders_text() {
    for cmd in ["validate", "chartable", "dual", "subcat", "classes", "isaacs", "check", "modular"] {
        let o = run(&[cmd, "toric_code"]);
        assert_eq!(code(&o), 0, "{cmd}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("fusionlab "), "{cmd}");
    }
}
