//! End-to-end checks of the command surface: exit codes, JSON shapes, and
//! byte-level determinism.

use freelinks_cli::run_command;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["freelinks"];
    argv.extend(args);
    let out = run_command(argv);
    (out.code, out.stdout)
}

fn run_json(args: &[&str]) -> Value {
    let (code, stdout) = run(args);
    assert_eq!(code, 0, "{args:?}: {stdout}");
    serde_json::from_str(&stdout).unwrap()
}

#[test]
fn parity_examples_from_the_module_contract() {
    let v = run_json(&["parity", "--rule", "gaussian", "1 2 1 2"]);
    assert_eq!(v, serde_json::json!({ "1": 1, "2": 1 }));

    let v = run_json(&[
        "parity",
        "--rule",
        "pL",
        "O A1 O A2 / A1 A2",
        "--component",
        "0",
    ]);
    assert_eq!(v, serde_json::json!({ "O": 1 }));
}

#[test]
fn parse_error_exits_one_with_structured_code() {
    let (code, stdout) = run(&["parse", "1 1 / 1"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["error"]["code"], "OccurrenceCountNotTwo");
}

#[test]
fn usage_error_exits_two() {
    let out = run_command(["freelinks", "parity", "--rule", "bogus", "1 1"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());

    let out = run_command(["freelinks", "nonsense"]);
    assert_eq!(out.code, 2);
}

#[test]
fn canon_quotients_rotation_and_relabeling() {
    let a = run_json(&["canon", "2 1 2 1"]);
    let b = run_json(&["canon", "1 2 1 2"]);
    assert_eq!(a["canonical"], b["canonical"]);
}

#[test]
fn bracket_spaces() {
    let v = run_json(&["bracket", "--space", "G1", "1 2 3 1 2 3"]);
    assert_eq!(v["terms"], serde_json::json!(["()"]));
    let v = run_json(&["bracket", "--space", "G2rel", "v v / ()"]);
    assert_eq!(v["zero"], false);
}

#[test]
fn equiv_reports_path_and_verdicts() {
    let v = run_json(&["equiv", "1 1", "()"]);
    assert_eq!(v["verdict"], "equivalent");
    assert_eq!(v["path"].as_array().unwrap().len(), 1);

    let v = run_json(&["equiv", "1 / 1", "() / ()"]);
    assert_eq!(v["verdict"], "distinct");
}

#[test]
fn cover_emits_projection_agreement() {
    let v = run_json(&["cover", "1 2 1 2", "--emit", "both"]);
    assert_eq!(v["kprime"], "()");
    assert_eq!(v["chord_deletion"], "()");
}

#[test]
fn orbit_is_deterministic_byte_for_byte() {
    let args = [
        "orbit",
        "1 2 1 2",
        "--seed",
        "7",
        "--length",
        "8",
        "--invariants",
        "gaussian-axioms,bracket",
    ];
    let (c1, out1) = run(&args);
    let (c2, out2) = run(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(out1, out2);
    let v: Value = serde_json::from_str(&out1).unwrap();
    assert_eq!(v["verdict"], "AllEqual");
}

#[test]
fn enumerate_stream_has_no_duplicates() {
    let v = run_json(&["enumerate", "--max-chords", "3"]);
    let knots = v["knots"].as_array().unwrap();
    assert_eq!(knots.len(), 8);
    let mut seen = std::collections::BTreeSet::new();
    for k in knots {
        assert!(seen.insert(k["code"].as_str().unwrap().to_string()));
    }
}

#[test]
fn corpus_batch_is_sorted_by_name() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/sample.corpus");
    let v = run_json(&["parse", "--corpus", path]);
    let entries = v["entries"].as_object().unwrap();
    assert!(entries.contains_key("paper-kl"));
    assert_eq!(entries["two-chord"]["crossings"], 2);
    let names: Vec<&String> = entries.keys().collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn delta_reports_drop_reasons() {
    let v = run_json(&["delta", "1 1", "--mode", "nonsplit"]);
    assert_eq!(v["zero"], true);
    assert_eq!(v["dropped"][0]["reason"], "Split");
}

#[test]
fn homology_rule_reports_cycles() {
    let v = run_json(&[
        "parity",
        "--rule",
        "homology",
        "v A1 A2 v A3 A4 / x A1 A2 x A3 A4",
        "--component",
        "1",
    ]);
    assert_eq!(v["cycles"].as_array().unwrap().len(), 2);
    let bits = v["values"]["v"].as_array().unwrap();
    assert_eq!(bits.len(), 2);
}
