use std::process::Command;

use coclone_cli::{run, EXIT_NO, EXIT_OK, EXIT_USAGE, REPORT_SCHEMA};

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("coclone").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn define_reports_witness_atoms() {
    let (code, out, _) = call(&["define", "OR^2", "--lang", "OR^3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "YES\nOR^3@[1,1,2]\n");

    let (code, out, _) = call(&["define", "EQ", "--lang", "OR^2"]);
    assert_eq!(code, EXIT_NO);
    assert!(out.starts_with("NO\n"));

    let (code, out, _) = call(&["define", "EQ", "--lang", "OR^2", "--eq"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("YES\n"));
}

#[test]
fn language_splits_outside_braces() {
    let (code, out, _) = call(&["define", "{01,10}", "--lang", "{01,10}, OR^2"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn parse_errors_point_at_offset() {
    let (code, out, err) = call(&["classify", "{01,1}"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("offset 4"), "{err}");
    assert!(err.ends_with("      ^\n"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["nonsense"]).0, EXIT_USAGE);
    assert_eq!(call(&["pol"]).0, EXIT_USAGE);
    assert_eq!(call(&["classify"]).0, EXIT_USAGE);
    assert_eq!(call(&["weakbase", "IS00"]).0, EXIT_USAGE);
    assert_eq!(call(&["classify", "--fixtures", "/nonexistent/file"]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn classify_names_coclones() {
    assert_eq!(call(&["classify", "{01,10}"]).1, "ID\n");
    assert_eq!(call(&["classify", "WB:IS2_00"]).1, "IS2_00\n");
    let (code, out, _) = call(&["classify", "WB:IS3_00", "--n-max", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("unknown"), "{out}");
}

#[test]
fn classify_fixture_file() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/relations.txt");
    let (code, out, _) = call(&["classify", "--fixtures", path]);
    assert_eq!(code, EXIT_OK);
    let names: Vec<&str> = out.lines().map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert_eq!(names, ["IBF", "IS2_0", "ID", "IR0", "IE2", "IS2_00"]);
}

#[test]
fn weakbase_prints_formula_and_tuples() {
    let (code, out, _) = call(&["weakbase", "IS00", "--n", "2"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    let (_, first, _) = call(&["classify", lines[0]]);
    let (_, second, _) = call(&["classify", lines[1]]);
    assert_eq!(first, "IS2_00\n");
    assert_eq!(second, "IS2_00\n");
    assert_eq!(call(&["weakbase", "IS2_00"]).1, out);
}

#[test]
fn pol_hex_and_list() {
    assert_eq!(call(&["pol", "WB:IE2", "-k", "2"]).1, "m=1 n=1 02\nm=2 n=3 2a00\n");
    let (_, out, _) = call(&["ppol", "EQ", "-k", "2", "--list"]);
    assert!(out.lines().nth(1).unwrap().starts_with("m=2 n=81:"));
    assert_eq!(call(&["ppol", "EQ", "-k", "4"]).0, EXIT_USAGE);
}

#[test]
fn derive_and_cols() {
    let (code, out, _) = call(&["derive", "IM1(COLS^2) > (1=2) > irr"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().last().unwrap(), "irr: {001,011,111}");
    let (code, _, err) = call(&["derive", "IM1(COLS^2) > (1=x)"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("offset"), "{err}");
    assert_eq!(call(&["cols", "1", "--coclone", "IBF"]).1, "{00,01,10,11}\n");
}

#[test]
fn minimal_accepts_weak_bases() {
    let (code, out, _) = call(&["minimal", "WB:IE2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("minimal for IE2"));
    let (code, out, _) = call(&["minimal", "{0,1}"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out, _) = call(&["minimal", "{00,01,10}"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, _, _) = call(&["minimal", "{00,01,10,11}"]);
    assert_eq!(code, EXIT_NO);
}

#[test]
fn lattice_orders() {
    let (code, out, _) = call(&["lattice", "--n-max", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().any(|l| l == "IBF < IR0"));
    assert!(call(&["lattice", "--dot"]).1.starts_with("digraph coclones {"));
}

#[test]
fn verify_table_json_matches_schema() {
    let (code, out, _) = call(&["verify-table", "--n-max", "2", "--k-partial", "2", "--json"]);
    assert_eq!(code, EXIT_OK);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    let validator = jsonschema::JSONSchema::compile(&schema).unwrap();
    assert!(validator.is_valid(&report));
    assert_eq!(report["summary"]["failed"], 0);

    let mut broken = report.clone();
    broken["records"][0]["pass"] = serde_json::json!("yes");
    assert!(!validator.is_valid(&broken));
}

#[test]
fn binary_runs() {
    let bin = env!("CARGO_BIN_EXE_coclone");
    let out = Command::new(bin)
        .args(["define", "OR^2", "--lang", "OR^3"])
        .env("COCLONE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "YES\nOR^3@[1,1,2]\n");

    let out = Command::new(bin).args(["classify", "{01,1}"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8(out.stderr).unwrap().contains("offset 4"));
}
