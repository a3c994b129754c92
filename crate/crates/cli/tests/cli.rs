use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn slicegate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slicegate"))
        .args(args)
        .env_remove("SLICEGATE_STORE")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = slicegate(&all);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn has_rule(report: &Value, name: &str) -> bool {
    report["applied_rules"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["rule"] == name)
}

#[test]
fn figure_eight_is_obstructed() {
    let v = json(&["obstruct", "4_1"]);
    assert_eq!(v["verdict"]["topologically_slice"], "no");
    assert_eq!(v["verdict"]["smoothly_slice"], "no");
    assert!(has_rule(&v, "Fox-Milnor"));

    let out = slicegate(&["obstruct", "4_1", "--fail-on-obstruction"]);
    assert_eq!(out.status.code(), Some(1));
    let out = slicegate(&["obstruct", "6_1", "--fail-on-obstruction"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn three_twisted_double() {
    let v = json(&["whitehead", "--clasp", "+", "--twist", "3", "--companion", "unknot"]);
    let r = &v["report"];
    assert_eq!(r["bounds"]["gamma4"], serde_json::json!({"lo": 2, "hi": 2}));
    assert_eq!(r["verdict"]["nonorientably_slice"], "no");
    assert!(has_rule(r, "Yasuhara Prop 5.1"));
    assert_eq!(v["cable_target"]["source"], "reconstructed");
}

#[test]
fn untwisted_double_summary() {
    let out = slicegate(&["whitehead", "--clasp", "+", "--twist", "0", "--companion", "4_1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("topologically slice (Δ = 1)"), "{text}");
    assert!(text.contains("smoothly slice: unknown"), "{text}");
    assert!(text.contains("γ₄ ∈ [1,2]"), "{text}");
    assert!(text.contains("Freedman"), "{text}");
}

#[test]
fn negative_values_parse() {
    let v = json(&[
        "whitehead", "--clasp", "-", "--twist", "-2", "--framing", "-1", "--companion", "3_1",
    ]);
    assert_eq!(v["effective_twist"], -3);
    assert_eq!(v["params"]["clasp"], "negative");
}

#[test]
fn half_twist_regime_is_flagged() {
    let v = json(&["whitehead", "--clasp", "+", "--twist", "-3", "--companion", "unknot"]);
    assert_eq!(v["half_twist"], true);
    let warnings = v["report"]["warnings"].as_array().unwrap();
    assert!(warnings.iter().any(|w| w.as_str().unwrap().contains("half-twist")));
}

#[test]
fn batch_order_is_stable_under_parallelism() {
    let serial = json(&["obstruct", "--all"]);
    let parallel = json(&["obstruct", "--all", "--parallel"]);
    assert_eq!(serial, parallel);
    let names: Vec<&str> = serial["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(names.contains(&"4_1"));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(slicegate(&["obstruct", "no_such_knot"]).status.code(), Some(2));
    assert_eq!(slicegate(&["obstruct"]).status.code(), Some(2));
    assert_eq!(slicegate(&["whitehead", "--clasp", "x", "--twist", "1"]).status.code(), Some(2));
    assert_eq!(
        slicegate(&["euler-range", "--upsilon", "0", "--q", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(slicegate(&["import", "x.csv", "--map", "name=name"]).status.code(), Some(2));
}

#[test]
fn every_subcommand_speaks_json() {
    json(&["invariants", "3_1", "--omega", "1/2", "--omega", "1/6"]);
    json(&["cable-bounds", "--p", "2", "--q", "1", "--upsilon", "3_1"]);
    json(&["cobordism", "--from", "0", "--to", "-1/2", "--euler", "2"]);
    json(&["euler-range", "--upsilon", "0", "--q", "1"]);
    json(&["show", "unknot"]);
}

#[test]
fn invariants_of_trefoil() {
    let v = json(&["invariants", "3_1", "--omega", "1/2", "--omega", "1/6"]);
    assert_eq!(v["signature"], -2);
    assert_eq!(v["determinant"], "3");
    assert_eq!(v["alexander"], serde_json::json!([[1, -1], [-1, 0], [1, 1]]));
    assert_eq!(v["arf"], 1);
    assert_eq!(v["fox_milnor"]["passes"], false);
    assert_eq!(v["levine_tristram"][0]["signature"], serde_json::json!({"value": -2}));
    assert_eq!(v["levine_tristram"][1]["signature"], "singular");
}

#[test]
fn matrix_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("stevedore.json");
    fs::write(&path, "[[-1,0],[-1,2]]").unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["invariants", "--matrix", p]);
    assert_eq!(v["fox_milnor"]["passes"], true);
    let v = json(&["obstruct", "--matrix", p]);
    assert_eq!(v["verdict"]["topologically_slice"], "unknown");
}

#[test]
fn cobordism_and_euler_range() {
    let v = json(&["cobordism", "--from", "0", "--to", "0", "--euler", "2"]);
    assert_eq!(v["lhs"], "1/2");
    assert_eq!(v["holds"], true);
    let v = json(&["cobordism", "--from", "3_1", "--to", "0", "--euler", "0"]);
    assert_eq!(v["upsilon_start"], "-1");
    assert_eq!(v["holds"], false);
    let v = json(&["euler-range", "--upsilon", "0", "--q", "1"]);
    assert_eq!((v["lo"].as_i64(), v["hi"].as_i64()), (Some(-8), Some(4)));
}

fn with_store(store: &Path, args: &[&str]) -> Output {
    let mut all = vec!["--store", store.to_str().unwrap()];
    all.extend_from_slice(args);
    slicegate(&all)
}

#[test]
fn import_then_show() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store.json");
    let csv = dir.path().join("table.csv");
    fs::write(&csv, "Name,V,sig\nmy_fig8,\"[[1,1],[0,-1]]\",0\n").unwrap();
    let out = with_store(
        &store,
        &["import", csv.to_str().unwrap(), "--map", "name=Name,seifert=V,signature=sig"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(store.exists());

    let out = with_store(&store, &["show", "my_fig8", "--json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["arf"], 1);
    assert_eq!(v["provenance"]["sigma"], "table");

    // seeds survive the import
    assert!(with_store(&store, &["show", "3_1"]).status.success());
    let out = with_store(&store, &["obstruct", "my_fig8", "--fail-on-obstruction"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn inconsistent_import_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store.json");
    let csv = dir.path().join("bad.csv");
    fs::write(&csv, "name,seifert,signature\nK,\"[[1,1],[0,-1]]\",2\n").unwrap();
    let out = with_store(
        &store,
        &["import", csv.to_str().unwrap(), "--map", "name=name,seifert=seifert,signature=signature"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(!store.exists());
}

#[test]
fn reports_match_the_strict_schema() {
    use slicegate_core::obstruct::ObstructionReport;
    let strict = |v: &Value| {
        serde_json::from_value::<ObstructionReport>(v.clone()).expect("schema-valid report")
    };
    let mut single = json(&["obstruct", "4_1"]);
    single.as_object_mut().unwrap().remove("name");
    strict(&single);
    strict(&json(&["whitehead", "--clasp", "-", "--twist", "5", "--companion", "3_1"])["report"]);
    for e in json(&["obstruct", "--all"])["reports"].as_array().unwrap() {
        strict(&e["report"]);
    }
}
