//! End-to-end tests driving the compiled `macver` binary.

use serde_json::Value;
use std::process::{Command, Output};

fn macver(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_macver"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = macver(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8")
}

fn json_of(args: &[&str]) -> Value {
    serde_json::from_str(&stdout_of(args)).expect("valid json")
}

fn golden(name: &str) -> Value {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(&path).expect("golden exists"))
        .expect("golden parses")
}

/// Timing is nondeterministic; zero it before comparing against goldens.
fn normalized_report(args: &[&str]) -> Value {
    let mut v = json_of(args);
    v["wall_ms"] = Value::from(0);
    v
}

#[test]
fn macdonald_reports_match_goldens() {
    assert_eq!(
        normalized_report(&["verify", "macdonald", "A1(1)", "--order", "20", "--json"]),
        golden("macdonald_a1_order20.json")
    );
    assert_eq!(
        normalized_report(&["verify", "macdonald", "G2(3)", "--order", "12", "--json"]),
        golden("macdonald_g2_order12.json")
    );
    assert_eq!(
        normalized_report(&["verify", "macdonald", "BC1(2)", "--order", "10", "--json"]),
        golden("macdonald_bc1_order10.json")
    );
}

#[test]
fn expansion_matches_golden() {
    assert_eq!(
        json_of(&["expand", "lhs", "BC1(2)", "--order", "10", "--json"]),
        golden("expand_lhs_bc1_order10.json")
    );
}

#[test]
fn exit_codes_encode_outcomes() {
    let ok = macver(&["verify", "macdonald", "A2(1)", "--order", "6"]);
    assert_eq!(ok.status.code(), Some(0));

    // wrong lattice multiplier: series disagree, binary still reports cleanly
    let bad = macver(&["verify", "macdonald", "BC1(2)", "--order", "6", "--lattice-scale", "6"]);
    assert_eq!(bad.status.code(), Some(1));
    let text = String::from_utf8_lossy(&bad.stdout);
    assert!(text.contains("FAIL") && text.contains("first mismatch"), "{text}");

    let unknown = macver(&["verify", "macdonald", "Z9(9)"]);
    assert_eq!(unknown.status.code(), Some(2));
    let err = String::from_utf8_lossy(&unknown.stderr);
    assert!(err.contains("legal labels"), "{err}");
    assert!(err.contains("A3(1)"), "{err}");
}

#[test]
fn rejects_malformed_requests() {
    assert_eq!(macver(&["verify", "nonsense", "A2"]).status.code(), Some(2));
    assert_eq!(macver(&["table", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        macver(&["verify", "macdonald", "A1(1)", "--order", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(macver(&["verify", "macdonald", "B2"]).status.code(), Some(2));
    assert_eq!(macver(&["expand", "middle", "A1(1)"]).status.code(), Some(2));
}

#[test]
fn info_reports_non_reduced_structure() {
    let v = json_of(&["info", "BC2(2)", "--json"]);
    assert_eq!(v["labels"], serde_json::json!([1, 2, 2]));
    assert_eq!(v["colabels"], serde_json::json!([2, 2, 1]));
    assert_eq!(v["special_indices"], serde_json::json!([2]));
    assert_eq!(v["c"], "5");
    assert_eq!(v["h"], 5);
    assert_eq!(v["h_dual"], 5);
    assert_eq!(v["kac"], "A4(2)");

    let f = json_of(&["info", "F4", "--json"]);
    assert_eq!(f["roots"], 48);
    assert_eq!(f["weyl_order"], 1152);
    assert_eq!(f["h"], 12);
}

#[test]
fn series_are_scale_invariant() {
    let base = stdout_of(&["expand", "rhs", "B2(2)", "--order", "8", "--json"]);
    let doubled = stdout_of(&["expand", "rhs", "B2(2)", "--order", "8", "--json", "--scale", "2"]);
    let third = stdout_of(&["expand", "rhs", "B2(2)", "--order", "8", "--json", "--scale", "1/3"]);
    assert_eq!(base, doubled);
    assert_eq!(base, third);
}

#[test]
fn folding_table_lists_both_columns() {
    let v = json_of(&["table", "folding", "--json"]);
    let rows = v["rows"].as_array().expect("rows");
    let find = |src: &str, auto: &str| {
        rows.iter()
            .find(|r| r["source"] == src && r["automorphism"] == auto)
            .unwrap_or_else(|| panic!("missing row {src}/{auto}"))
    };
    let a5 = find("A5", "flip");
    assert_eq!(a5["sum"], "B3");
    assert_eq!(a5["mean"], "C3");
    assert_eq!(a5["affine_sum"], "B3(2)");
    assert_eq!(a5["affine_mean"], "C3(1)");
    let d5 = find("D5", "flip");
    assert_eq!(d5["sum"], "C4");
    assert_eq!(d5["mean"], "B4");
    let tri = find("D4", "triality");
    assert_eq!(tri["sum"], "G2");
    assert_eq!(tri["affine_sum"], "G2(3)");
    assert_eq!(tri["affine_mean"], "G2(1)");
    let bc = find("D4(1)", "order-4");
    assert_eq!(bc["affine_sum"], "BC1(2)");
}

#[test]
fn fold_verbs_identify_images() {
    let sum = stdout_of(&["fold", "A5"]);
    assert!(sum.contains("B3"), "{sum}");
    let mean = stdout_of(&["fold", "A5", "--mean"]);
    assert!(mean.contains("C3"), "{mean}");
    let tri = stdout_of(&["fold", "D4", "--nodes", "2,1,3,0"]);
    assert!(tri.contains("G2"), "{tri}");
    let affine = json_of(&["fold", "A5(1)", "--json"]);
    assert_eq!(affine["image"], "B3(2)");
}

#[test]
fn roots_lists_affine_levels() {
    let v = json_of(&["roots", "A1(1)", "--level", "1", "--json"]);
    assert_eq!(v["roots"].as_array().expect("roots").len(), 6);
    let g = json_of(&["roots", "G2", "--json"]);
    assert_eq!(g["roots"].as_array().expect("roots").len(), 12);
}

#[test]
fn nomenclature_table_crosses_conventions() {
    let v = json_of(&["table", "nomenclature", "--json"]);
    let rows = v["rows"].as_array().expect("rows");
    let find = |saito: &str| {
        rows.iter()
            .find(|r| r["saito"] == saito)
            .unwrap_or_else(|| panic!("missing {saito}"))
    };
    assert_eq!(find("B2(2)")["kac"], "D3(2)");
    assert_eq!(find("C3(2)")["kac"], "A5(2)");
    assert_eq!(find("BC1(2)")["kac"], "A2(2)");
    assert_eq!(find("G2(3)")["macdonald"], "G2^v");

    let nr = json_of(&["table", "nonreduced", "--json"]);
    assert_eq!(nr["rows"].as_array().expect("rows").len(), 4);
}
