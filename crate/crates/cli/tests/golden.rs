//! Compares CLI output with the recorded golden files.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite them.

mod common;

use jsonschema::Validator;
use serde_json::Value;

fn schema() -> Validator {
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/output.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&src).unwrap()).unwrap()
}

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for case in common::cases() {
        let (stdout, code) = common::run(&case.args);
        if code != case.exit {
            failures.push(format!("{}: exit {code}, expected {}", case.name, case.exit));
        }
        if update {
            std::fs::write(common::golden_dir().join(format!("{}.out", case.name)), &stdout).unwrap();
            continue;
        }
        match common::expected(&case) {
            Some(want) if want == stdout => {}
            Some(want) => failures.push(format!(
                "{}: output differs\n--- expected\n{}--- got\n{}",
                case.name,
                String::from_utf8_lossy(&want),
                String::from_utf8_lossy(&stdout)
            )),
            None => failures.push(format!("{}: no golden file", case.name)),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn json_outputs_match_schema() {
    let schema = schema();
    for case in common::cases().iter().filter(|c| c.args.iter().any(|a| a == "json")) {
        let (stdout, _) = common::run(&case.args);
        let value: Value = serde_json::from_slice(&stdout).unwrap();
        let errors: Vec<String> = schema.iter_errors(&value).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{}: {}", case.name, errors.join("; "));
    }
}

#[test]
fn schema_rejects_malformed_reports() {
    let schema = schema();
    for bad in [
        r#"{"command": "check"}"#,
        r#"{"command": "check", "entailed": "yes"}"#,
        r#"{"command": "justify", "entailed": true, "axioms": [{"label": "X1", "axiom": "a <= b"}]}"#,
        r#"{"command": "nope"}"#,
    ] {
        assert!(!schema.is_valid(&serde_json::from_str(bad).unwrap()), "{bad}");
    }
}

#[test]
fn output_never_mentions_the_input_path() {
    let data = common::data_dir();
    let data = data.to_str().unwrap();
    for case in common::cases() {
        let (stdout, _) = common::run(&case.args);
        assert!(!String::from_utf8_lossy(&stdout).contains(data), "{}", case.name);
    }
}

#[test]
fn text_errors_go_to_stderr() {
    let path = common::data_dir().join("bad.slp");
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_semilat"))
        .arg("check")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error: 3:6: undeclared function `h`"), "{err}");
}
