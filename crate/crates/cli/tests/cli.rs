use std::io::Write;
use std::process::{Command, Output};

use nichols_core::classifier::{ClassificationRow, TableCheckReport};
use nichols_core::shuffle::GradedDims;
use nichols_core::uqsl2::BiproductReport;
use serde_json::Value;

fn nichols(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nichols"))
        .args(args)
        .env_remove("NICHOLS_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn space_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

const A2_SPACE: &str = r#"{"basis": ["x", "y"], "exponents": [[2, -1], [-1, 2]]}"#;

#[test]
fn extend_a1_three_lambda() {
    let out = nichols(&[
        "--format", "json", "extend", "--type", "A", "--rank", "1", "--weight", "3", "--x", "3/2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "extend");
    let r = &v["result"];
    assert_eq!(r["b"], serde_json::json!([[2, -3], [-1, 2]]));
    assert_eq!(r["verdict"]["verdict"], "Finite");
    assert_eq!(r["verdict"]["name"], "G2");
    let degrees: Vec<i64> = r["relation_degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["degree"].as_i64().unwrap())
        .collect();
    // 1 - b_{⋆α} with b_{⋆α} = -1
    assert_eq!(degrees, vec![2]);
}

#[test]
fn extend_reports_infinite_verdicts() {
    let out = nichols(&[
        "--format", "json", "extend", "--type", "A", "--rank", "2", "--weight", "1,1", "--x", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["verdict"]["verdict"], "Infinite");
}

#[test]
fn classify_a5_contains_e6() {
    let out = nichols(&["--format", "json", "classify", "--type", "A", "--rank", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<ClassificationRow> =
        serde_json::from_value(json(&out)["result"].clone()).unwrap();
    assert!(rows.len() >= 6);
    assert!(rows.iter().any(|r| r.b_type == "E6"));

    let table = nichols(&["classify", "--type", "A", "--rank", "5"]);
    let text = String::from_utf8(table.stdout).unwrap();
    assert!(text.starts_with("g  | lambda | x"));
}

#[test]
fn table_check_exit_code_follows_the_report() {
    let out = nichols(&["--format", "json", "table-check", "--max-rank", "8"]);
    let v = json(&out);
    let report: TableCheckReport = serde_json::from_value(v["result"].clone()).unwrap();
    let expected = if report.non_whitelisted() > 0 { 2 } else { 0 };
    assert_eq!(out.status.code(), Some(expected));
    assert_eq!(v["mismatch"], expected == 2);
}

#[test]
fn nichols_dims_is_deterministic_and_round_trips() {
    let f = space_file(A2_SPACE);
    let path = f.path().to_str().unwrap();
    let args = [
        "--format",
        "json",
        "--seed",
        "7",
        "nichols-dims",
        "--space",
        path,
        "--max-degree",
        "5",
    ];
    let a = nichols(&args);
    let b = nichols(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let dims: GradedDims = serde_json::from_value(json(&a)["result"].clone()).unwrap();
    assert_eq!(dims.dims, vec![1, 2, 4, 6, 9, 12]);

    let exact = nichols(&[
        "nichols-dims",
        "--space",
        path,
        "--max-degree",
        "5",
        "--exact",
    ]);
    let text = String::from_utf8(exact.stdout).unwrap();
    assert!(text.contains("dims: [1, 2, 4, 6, 9, 12]"), "{text}");
    assert!(text.contains("new relations: {3: 2}"), "{text}");
}

#[test]
fn malformed_space_is_a_usage_error() {
    let f = space_file(r#"{"basis": ["x"], "exponents": "nope"}"#);
    let out = nichols(&["nichols-dims", "--space", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("invalid space description"), "{err}");
}

#[test]
fn budget_comes_from_the_environment() {
    let f = space_file(A2_SPACE);
    let out = Command::new(env!("CARGO_BIN_EXE_nichols"))
        .args([
            "nichols-dims",
            "--space",
            f.path().to_str().unwrap(),
            "--max-degree",
            "6",
        ])
        .env("NICHOLS_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("exceeds budget 3"));
}

#[test]
fn biproduct_and_relation_checks() {
    let out = nichols(&[
        "--format",
        "json",
        "biproduct-check",
        "--n",
        "1",
        "--x",
        "3/2",
        "--max-degree",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r: BiproductReport = serde_json::from_value(json(&out)["result"].clone()).unwrap();
    assert!(r.passes);
    assert_eq!(r.quotient, vec![1, 1, 2, 2, 3, 3]);

    let out = nichols(&["relation-check", "--n", "1", "--x", "3/2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().ends_with("PASS\n"));
}

#[test]
fn serre_modes() {
    let out = nichols(&[
        "--format", "json", "serre", "--n", "1", "--gamma", "1*v^2", "--eta", "1*v^-1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json(&out)["result"]["coefficients"],
        serde_json::json!(["1*v^0", "-1*v^-1"])
    );

    let f = space_file(A2_SPACE);
    let path = f.path().to_str().unwrap();
    let out = nichols(&[
        "--format", "json", "serre", "--space", path, "--i", "0", "--j", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["b"], -1);
    assert_eq!(v["result"]["in_kernel"], true);

    // wrong Cartan entry
    let out = nichols(&[
        "serre", "--space", path, "--i", "0", "--j", "1", "--b", "-2",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(nichols(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        nichols(&["extend", "--type", "A", "--rank", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        nichols(&["extend", "--type", "A", "--rank", "2", "--weight", "1", "--x", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        nichols(&["relation-check", "--n", "1", "--x", "three"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(nichols(&["--help"]).status.code(), Some(0));
}
