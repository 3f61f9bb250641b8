//! The command-line contract: formats, exit codes and JSON reports. Shared
//! by the integration tests and the acceptance run.

use std::path::Path;
use std::process::{Command, Output};
use std::sync::OnceLock;

use serde_json::Value;

pub fn algebrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algebrad"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn validator() -> &'static jsonschema::Validator {
    static V: OnceLock<jsonschema::Validator> = OnceLock::new();
    V.get_or_init(|| {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
        let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        jsonschema::validator_for(&schema).expect("schema compiles")
    })
}

/// Runs with `--json`, checks the report against the schema and the exit
/// code against the status.
fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = algebrad(&all);
    let v: Value = serde_json::from_str(stdout(&out).trim_end()).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", stdout(&out)));
    let errors: Vec<String> = validator().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}\n{v}");
    let expected = match v["status"].as_str() {
        Some("ok") => 0,
        Some("fail") => 1,
        _ => 2,
    };
    assert_eq!(code(&out), expected, "{args:?}: {v}");
    (code(&out), v)
}

fn export(dir: &Path, id: &str, n: usize) -> String {
    let path = dir.join(format!("{}.json", id.replace('/', "_")));
    let p = path.to_str().unwrap();
    let (c, _) = json(&["--max-arity", &n.to_string(), "corpus", "export", id, "-o", p]);
    assert_eq!(c, 0);
    p.to_string()
}

pub fn corpus_list_and_export_round_trip() {
    let (c, v) = json(&["corpus", "list"]);
    assert_eq!(c, 0);
    let ids: Vec<String> = v["result"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["id"].as_str().unwrap().to_string())
        .collect();
    assert!(ids.contains(&"qo/ass".to_string()));
    let dir = tempfile::tempdir().unwrap();
    for id in &ids {
        let file = export(dir.path(), id, 3);
        let text = std::fs::read_to_string(&file).unwrap();
        assert!(text.ends_with('\n') && !text.ends_with("\n\n"));
        // Printing to standard output gives the same bytes.
        let out = algebrad(&["--max-arity", "3", "corpus", "export", id]);
        assert_eq!(stdout(&out), text, "{id}");
        let (c, _) = json(&["validate", &file]);
        assert_eq!(c, 0, "{id}");
    }
}

pub fn checks_and_exit_codes() {
    assert_eq!(json(&["check", "operad", "corpus:qo/ass"]).0, 0);
    assert_eq!(json(&["--max-arity", "3", "check", "monad", "corpus:qc/powerset"]).0, 0);
    assert_eq!(json(&["--max-arity", "3", "check", "algebrad", "corpus:qa/monoid-functions"]).0, 0);
    assert_eq!(json(&["--max-arity", "3", "check", "module", "corpus:qc/pointed/free/1"]).0, 0);
    assert_eq!(json(&["--max-arity", "3", "check", "algebra", "corpus:qo/com-pos/free/2"]).0, 0);
    assert_eq!(json(&["--max-arity", "3", "check", "comm-alg", "corpus:qa/functions/2"]).0, 0);

    // A single changed substitution entry breaks the laws: exit 1 with a witness.
    let dir = tempfile::tempdir().unwrap();
    let file = export(dir.path(), "qo/ass", 3);
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let subs = doc["substitutions"].as_array_mut().unwrap();
    let t = subs.iter_mut().find(|t| t["parts"] == serde_json::json!([1, 2])).unwrap();
    let v = t["table"][0].as_u64().unwrap();
    t["table"][0] = Value::from(v % 6 + 1);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let (c, v) = json(&["check", "operad", bad.to_str().unwrap()]);
    assert_eq!(c, 1);
    let violations = v["report"]["violations"].as_array().unwrap();
    assert!(!violations.is_empty());
    assert!(!violations[0]["witness"].as_array().unwrap().is_empty());

    // Input errors exit 2.
    assert_eq!(json(&["check", "operad", "corpus:qo/lie"]).0, 2);
    assert_eq!(json(&["check", "monad", "corpus:qo/ass"]).0, 2);
    assert_eq!(json(&["--max-arity", "9", "check", "operad", "corpus:qo/ass"]).0, 2);
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"format_version\":1}").unwrap();
    assert_eq!(json(&["validate", garbage.to_str().unwrap()]).0, 2);
    assert_eq!(json(&["validate", dir.path().join("missing.json").to_str().unwrap()]).0, 2);
    // Usage errors also exit 2.
    assert_eq!(code(&algebrad(&["check", "operad"])), 2);
    assert_eq!(code(&algebrad(&["frobnicate"])), 2);
}

pub fn invalid_carrier_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let file = export(dir.path(), "qo/h2", 3);
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    // Make the transposition fix the first element: no longer an action.
    doc["carriers"][2]["action"][0][1] = Value::from(1);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let (c, v) = json(&["validate", bad.to_str().unwrap()]);
    assert_eq!(c, 1);
    assert_eq!(v["report"]["violations"][0]["law"], "action-compatibility");
    // Operations refuse it as input.
    assert_eq!(json(&["eval", bad.to_str().unwrap(), "--set", "2"]).0, 2);
}

pub fn eval_reports_elements() {
    let (c, v) = json(&["eval", "corpus:qc/h2", "--set", "3"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["size"], 9);
    let out = algebrad(&["eval", "corpus:qc/h2", "--set", "3"]);
    assert!(stdout(&out).starts_with("9 elements"));
    let (_, v) = json(&["--max-arity", "2", "eval", "corpus:qo/com-pos", "--set", "2"]);
    assert_eq!(v["result"]["size"], 5);
    let (_, v) = json(&["--max-arity", "3", "eval", "corpus:qa/h2", "--monoid", "add3"]);
    assert_eq!(v["result"]["size"], 9);
    assert_eq!(json(&["--max-arity", "3", "eval", "corpus:qa/h2"]).0, 2);
    assert_eq!(json(&["eval", "corpus:qc/h2", "--set", "7"]).0, 2);
}

pub fn tensor_compose_and_iso() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let o = out.to_str().unwrap();
    // h_0 is the tensor unit.
    assert_eq!(json(&["tensor", "corpus:qo/h0", "corpus:qo/ass", "-o", o]).0, 0);
    assert_eq!(json(&["iso", o, "corpus:qo/ass"]).0, 0);
    // h_1 ⊗ h_1 ≅ h_2, but not ≅ h_1.
    assert_eq!(json(&["tensor", "corpus:qo/h1", "corpus:qo/h1", "-o", o]).0, 0);
    assert_eq!(json(&["iso", o, "corpus:qo/h2"]).0, 0);
    let (c, v) = json(&["iso", o, "corpus:qo/h1"]);
    assert_eq!(c, 1);
    assert_eq!(v["result"]["isomorphic"], false);
    // The composition unit.
    assert_eq!(json(&["compose", "corpus:qo/ass", "corpus:qo/unit", "-o", o]).0, 0);
    assert_eq!(json(&["iso", o, "corpus:qo/ass"]).0, 0);
    // qc and qa outputs are valid documents.
    for (a, b) in [("corpus:qc/pointed", "corpus:qc/identity"), ("corpus:qa/h1", "corpus:qa/h1")] {
        assert_eq!(json(&["--max-arity", "3", "tensor", a, b, "-o", o]).0, 0);
        assert_eq!(json(&["validate", o]).0, 0);
    }
    let (c, v) = json(&["--max-arity", "3", "compose", "corpus:qa/h2", "corpus:qa/functions/2"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["cards"], serde_json::json!([1, 4, 16, 64]));
    assert_eq!(json(&["--max-arity", "3", "compose", "corpus:qc/h2", "corpus:qc/pointed", "-o", o]).0, 2);
    assert_eq!(json(&["tensor", "corpus:qo/h1", "corpus:qc/identity"]).0, 2);
}

pub fn oracle_subcommands() {
    assert_eq!(json(&["--max-arity", "3", "oracle", "check", "corpus:qc/pointed"]).0, 0);
    let (_, v) = json(&["--max-arity", "3", "oracle", "eval", "corpus:qc/h2", "--set", "2"]);
    assert_eq!(v["result"]["classes"], 4);
    assert_eq!(v["result"]["stabilized"], true);
    let (_, v) = json(&["oracle", "iso", "corpus:qo/h2", "corpus:qo/h2"]);
    assert_eq!(v["result"]["bijections"][2], serde_json::json!([1, 2]));
    let (c, v) = json(&["--max-arity", "2", "oracle", "mutate", "corpus:qc/pointed"]);
    assert_eq!(c, 0, "{v}");
}

#[allow(dead_code)]
pub const ALL: &[(&str, fn())] = &[
    ("corpus_list_and_export_round_trip", corpus_list_and_export_round_trip),
    ("checks_and_exit_codes", checks_and_exit_codes),
    ("invalid_carrier_fails_validation", invalid_carrier_fails_validation),
    ("eval_reports_elements", eval_reports_elements),
    ("tensor_compose_and_iso", tensor_compose_and_iso),
    ("oracle_subcommands", oracle_subcommands),
];
