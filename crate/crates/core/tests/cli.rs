use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pencil"))
        .args(args)
        .output()
        .expect("failed to spawn pencil")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} exited with {:?}\nstderr:\n{}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn assert_golden(name: &str, args: &[&str]) {
    let expected = fs::read_to_string(root().join("tests/golden").join(name))
        .unwrap_or_else(|_| panic!("missing golden file {name}"));
    assert_eq!(stdout_of(args), expected, "output of {args:?} differs from {name}");
}

fn assert_schema(schema: &str, doc: &str) {
    let schema: Value =
        serde_json::from_str(&fs::read_to_string(root().join("schema").join(schema)).unwrap())
            .unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let doc: Value = serde_json::from_str(doc).unwrap();
    let msgs: Vec<String> = match compiled.validate(&doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "{schema} rejected document:\n{}", msgs.join("\n"));
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("terminated by signal")
}

const C5: &str = "x*(x^4 + (x*z + y^2)^2)";

#[test]
fn golden_analyze() {
    assert_golden("analyze_c5.json", &["analyze", "--poly", C5, "--components", "3", "--json"]);
    assert_golden("analyze_fermat.json", &["analyze", "--poly", "x^3+y^3+z^3", "--json"]);
}

#[test]
fn golden_family() {
    assert_golden("family_c6_verify.json", &["family", "--kind", "C", "--degree", "6", "--json"]);
    assert_golden(
        "family_cprime7_report.json",
        &["family", "--kind", "Cprime", "--degree", "7", "--report", "--json"],
    );
}

#[test]
fn golden_forms() {
    let base = ["forms", "--kind", "C", "--degree", "7", "--k", "3", "--format"];
    assert_golden("forms_c7_k3.json", &[&base[..], &["json"]].concat());
    assert_golden("forms_c7_k3.tex", &[&base[..], &["latex"]].concat());
    assert_golden(
        "forms_cprime7_k4.json",
        &["forms", "--kind", "Cprime", "--degree", "7", "--k", "4"],
    );
}

#[test]
fn outputs_match_schemas() {
    for (poly, comps) in [(C5, Some("3")), ("x^3+y^3+z^3", None), ("x*y*(x-y)", Some("3")), ("x^2+y^2+z^2", None)] {
        let mut args = vec!["analyze", "--poly", poly, "--json"];
        if let Some(c) = comps {
            args.extend(["--components", c]);
        }
        assert_schema("curve_report.schema.json", &stdout_of(&args));
    }
    assert_schema(
        "curve_report.schema.json",
        &stdout_of(&["analyze", "--poly", C5, "--json", "--timing"]),
    );
    for kind in ["C", "Cprime", "Cdoubleprime"] {
        let doc = stdout_of(&["family", "--kind", kind, "--degree", "6", "--verify", "--json"]);
        assert_schema("verification_report.schema.json", &doc);
        let doc = stdout_of(&["family", "--kind", kind, "--degree", "6", "--report", "--json"]);
        assert_schema("curve_report.schema.json", &doc);
        let doc = stdout_of(&["forms", "--kind", kind, "--degree", "8", "--k", "5"]);
        assert_schema("forms.schema.json", &doc);
    }
    assert_schema("suite.schema.json", &stdout_of(&["suite", "--max-degree", "5", "--json"]));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["family", "--kind", "Cdoubleprime", "--degree", "7", "--report", "--json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["suite", "--max-degree", "6", "--json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&["analyze", "--poly", "x^2*y"]), 2);
    assert_eq!(exit_code(&["analyze", "--poly", "x^2 + y"]), 2);
    assert_eq!(exit_code(&["analyze", "--poly", "x^2 + * y"]), 2);
    assert_eq!(exit_code(&["analyze", "--poly", "x*y*z", "--components", "0"]), 2);
    assert_eq!(exit_code(&["family", "--kind", "C", "--degree", "2"]), 2);
    assert_eq!(exit_code(&["family", "--kind", "D", "--degree", "5"]), 2);
    assert_eq!(exit_code(&["forms", "--kind", "C", "--degree", "7", "--k", "7"]), 2);
    assert_eq!(exit_code(&["family", "--kind", "C", "--degree", "8", "--verify"]), 0);
    assert_eq!(exit_code(&["suite", "--max-degree", "5"]), 0);
}

#[test]
fn syntax_errors_carry_a_position() {
    let out = run(&["analyze", "--poly", "x^2 + * y"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("position 6"), "{err}");
}

#[test]
fn analyze_text_marks_missing_components() {
    let text = stdout_of(&["analyze", "--poly", "x^3+y^3+z^3", "--text"]);
    assert!(text.contains("classification = neither"));
    assert!(text.contains("tau            = 0"));
    assert!(text.contains("needs --components"));
}

#[test]
fn cprime7_verification_shows_alexander() {
    let text = stdout_of(&["family", "--kind", "Cprime", "--degree", "7", "--verify"]);
    assert!(text.contains("Alexander polynomial (two paths)"));
    assert!(text.contains("Phi_1^3"));
    assert!(text.trim_end().ends_with("C'_7: PASS"));
}
