use std::process::{Command, Output};
use std::sync::OnceLock;

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chaincodes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn validator() -> &'static jsonschema::Validator {
    static V: OnceLock<jsonschema::Validator> = OnceLock::new();
    V.get_or_init(|| {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schema/output.json");
        let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        jsonschema::validator_for(&schema).unwrap()
    })
}

fn check(doc: &Value) {
    let errors: Vec<String> = validator().iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{doc}");
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    check(&doc);
    doc
}

fn fails(args: &[&str], code: i32) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_slice(&out.stderr).unwrap();
    check(&doc);
    doc
}

#[test]
fn factor_z49_length_six() {
    let doc = json(&["factor", "--p", "7", "--t", "2", "--n", "6"]);
    assert_eq!(doc["verb"], "factor");
    assert_eq!(doc["degrees"], serde_json::json!([1, 1, 1, 1, 1, 1]));
    // each factor is X - a with a^6 = 1 in Z_49
    let mut roots: Vec<u64> = doc["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| (49 - f[0].as_u64().unwrap()) % 49)
        .collect();
    for &a in &roots {
        assert_eq!((1..=6).fold(1u64, |x, _| x * a % 49), 1);
    }
    roots.sort();
    roots.dedup();
    assert_eq!(roots.len(), 6);
}

#[test]
fn idempotents_f7() {
    let doc = json(&["idempotents", "--p", "7", "--n", "6"]);
    let idems = doc["idempotents"].as_array().unwrap();
    assert_eq!(idems.len(), 6);
    let mut sum = [0u64; 6];
    for e in idems {
        for (s, c) in sum.iter_mut().zip(e.as_array().unwrap()) {
            *s = (*s + c.as_u64().unwrap()) % 7;
        }
    }
    assert_eq!(sum, [1, 0, 0, 0, 0, 0]);
    assert_eq!(doc["sigma"].as_array().unwrap().len(), 6);
}

#[test]
fn exists_examples() {
    let doc = json(&["exists", "--p", "2", "--t", "2", "--n", "3", "--kind", "cyclic"]);
    assert_eq!(doc["exists"], false);
    assert_eq!(doc["order_q"], 2);
    let doc = json(&["exists", "--p", "7", "--t", "2", "--n", "6"]);
    assert_eq!(doc["exists"], true);
    assert_eq!(doc["minus_one_witness"], Value::Null);
    let doc = json(&["exists", "--p", "3", "--t", "3", "--n", "4", "--kind", "negacyclic"]);
    assert_eq!(doc["kind"], "negacyclic");
}

#[test]
fn code_verbs_agree() {
    let base = ["--p", "2", "--t", "2", "--r", "2", "--n", "3", "--lambda", "1,0"];
    let with = |verb: &str, exps: &str| {
        let mut args = vec![verb];
        args.extend(base);
        args.extend(["--exponents", exps]);
        json(&args)
    };
    let code = with("code", "1,0,2");
    assert_eq!(code["ring"], "GR(2,2,2;Y^2+Y+1)");
    assert_eq!(code["cardinality"], "64");
    let dual = with("dual", "1,0,2");
    assert_eq!(dual["code"]["exponents"], serde_json::json!([1, 0, 2]));
    let exps: Vec<String> = dual["dual"]["exponents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.to_string())
        .collect();
    let verdict = with("classify", "1,0,2")["verdict"].clone();
    assert_eq!(verdict, code["verdict"]);
    assert_eq!(verdict == "self_dual", exps.join(",") == "1,0,2");

    let mut build = vec!["build-selfdual", "--nontrivial"];
    build.extend(base);
    let built = json(&build);
    let s: Vec<String> = built["code"]["exponents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.to_string())
        .collect();
    assert_eq!(with("classify", &s.join(","))["verdict"], "self_dual");
}

#[test]
fn negative_lambda_and_missing_matching() {
    let doc = json(&["code", "--p", "3", "--t", "2", "--n", "4", "--lambda", "-1", "--exponents", "1,1"]);
    assert_eq!(doc["lambda"], 8);
    let doc = json(&["idempotents", "--p", "3", "--t", "2", "--n", "2", "--lambda", "4"]);
    assert_eq!(doc["sigma"], Value::Null);
    let err = fails(&["build-selfdual", "--p", "3", "--t", "2", "--n", "2", "--lambda", "4"], 2);
    assert_eq!(err["error"], "lambda_not_plus_minus_one");
}

#[test]
fn oracle_verify_small() {
    for args in [
        &["oracle-verify", "--p", "2", "--t", "2", "--n", "3"][..],
        &["oracle-verify", "--p", "3", "--t", "2", "--n", "2", "--lambda", "4"],
        &["oracle-verify", "--p", "2", "--t", "2", "--r", "2", "--n", "3"],
    ] {
        assert_eq!(json(args)["ok"], true, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let err = fails(&["factor", "--p", "7", "--n", "14"], 2);
    assert_eq!(err["error"], "repeated_root_length");
    fails(&["factor", "--p", "6", "--n", "5"], 2);
    fails(&["exists", "--p", "4", "--t", "2", "--n", "3"], 2);
    fails(&["code", "--p", "2", "--t", "2", "--n", "3", "--exponents", "1"], 2);
    fails(&["code", "--p", "2", "--t", "2", "--n", "3", "--exponents", "3,0"], 2);
    assert_eq!(fails(&["factor", "--bogus"], 1)["error"], "usage");
    fails(&["frobnicate"], 1);
    fails(&["factor", "--p", "2", "--n", "3", "--lambda", "x"], 1);
    fails(&["factor", "--p", "2", "--n", "3", "--format", "csv"], 1);
    fails(&["scan", "--p", "2", "--n", "5..x"], 1);
    assert!(run(&["--help"]).status.success());
    assert!(run(&["--version"]).status.success());
}

#[test]
fn scan_is_deterministic_across_jobs() {
    let args = ["scan", "--p", "2,3,5", "--t", "2,3", "--r", "1..=2", "--n", "1..12", "--kinds", "cyclic,negacyclic"];
    let one = run(&[&args[..], &["--jobs", "1"]].concat());
    let four = run(&[&args[..], &["--jobs", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let doc: Value = serde_json::from_slice(&one.stdout).unwrap();
    check(&doc);
    let rows = doc["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["oracle_checked"] != false));

    let csv = run(&[&args[..], &["--format", "csv", "--jobs", "3"]].concat());
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("p,t,r,q,n,kind,exists,order_q,minus_one_witness,oracle_checked\n"));
    assert_eq!(text.lines().count(), rows.len() + 1);
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["idempotents", "--p", "2", "--t", "3", "--n", "7"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn text_tables() {
    let out = run(&["factor", "--p", "7", "--t", "2", "--n", "6", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 8);
    assert!(text.lines().nth(1).unwrap().starts_with("index  degree"));
    for verb in ["idempotents", "oracle-verify"] {
        let out = run(&[verb, "--p", "3", "--t", "2", "--n", "4", "--format", "text"]);
        assert!(out.status.success());
        assert!(!out.stdout.is_empty());
    }
}
