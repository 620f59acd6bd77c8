//! End-to-end tests of the `ore` binary: output shapes, exit codes and
//! stdout determinism.

use std::process::{Command, Output};

fn ore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ore"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8")
}

#[test]
fn mul_normalizes_the_defining_relation() {
    let out = ore(&["mul", "--ctx", "diff-rat", "x*y", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "y * x + 1");
}

#[test]
fn mul_json_carries_structured_terms() {
    let out = ore(&["mul", "--json", "--ctx", "diff-rat", "x*y", "1"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let product = &report["result"]["product"];
    assert_eq!(product["text"], "y * x + 1");
    assert_eq!(product["chi"], 1);
    assert_eq!(
        product["terms"][0],
        serde_json::json!({"x": 1, "y": 1, "coords": ["1"]})
    );
    assert_eq!(
        product["terms"][1],
        serde_json::json!({"x": 0, "y": 0, "coords": ["1"]})
    );
}

#[test]
fn commutes_and_chi() {
    let out = ore(&["commutes", "--ctx", "diff-oct", "x", "y"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "false");

    let out = ore(&["chi", "--ctx", "diff-rat", "y*x^2 + x"]);
    assert_eq!(stdout(&out).trim(), "2");

    let out = ore(&["chi", "--ctx", "diff-rat", "0"]);
    assert_eq!(stdout(&out).trim(), "-inf");
}

#[test]
fn bc_poly_classical_pair() {
    let out = ore(&["bc-poly", "--ctx", "diff-rat", "x^2", "x^3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "s^3 - t^2");
}

#[test]
fn bc_poly_json_report() {
    let out = ore(&["bc-poly", "--json", "--ctx", "diff-rat", "x^2", "x^3"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(report["command"], "bc-poly");
    assert_eq!(report["context"]["preset"], "diff-rat");
    assert_eq!(report["inputs"][0], "x^2");
    assert_eq!(report["result"]["found"], true);
    assert_eq!(report["result"]["polynomial"], "s^3 - t^2");
}

#[test]
fn module_basis_octonion_rank() {
    let out = ore(&[
        "module-basis",
        "--json",
        "--ctx",
        "diff-oct",
        "x^2",
        "--max-deg",
        "5",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(report["result"]["rank"], 16);
    assert_eq!(report["result"]["elements"].as_array().unwrap().len(), 16);
}

#[test]
fn centralizer_space_dimension() {
    let out = ore(&[
        "centralizer",
        "--json",
        "--ctx",
        "diff-rat",
        "x^2",
        "--deg",
        "1",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(report["result"]["dimension"], 2);
}

#[test]
fn dcond_detects_proportional_elements() {
    let out = ore(&["dcond", "--ctx", "diff-oct", "--ell", "1", "e3*x", "2*e3*x"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("dependent"));
}

#[test]
fn nucleus_check_witness() {
    let out = ore(&[
        "nucleus-check",
        "--json",
        "--ctx",
        "diff-oct",
        "e1*x",
        "--xdeg-bound",
        "2",
        "--ydeg-bound",
        "2",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(report["result"]["member"], false);
    assert!(report["result"]["witness"]["b"].is_string());
}

#[test]
fn verify_context_presets() {
    for preset in ["diff-rat", "diff-oct", "subst-oct"] {
        let out = ore(&[
            "verify-context",
            "--json",
            "--ctx",
            preset,
            "--samples",
            "20",
        ]);
        assert!(out.status.success(), "{preset} must verify");
        let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
        assert_eq!(report["result"]["valid"], true, "{preset}");
    }
}

#[test]
fn syntax_errors_exit_2() {
    let out = ore(&["mul", "--ctx", "diff-rat", "x +", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ore(&["chi", "--ctx", "diff-rat", "e7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stdout_is_deterministic() {
    let args = [
        "module-basis",
        "--json",
        "--ctx",
        "diff-oct",
        "x^2",
        "--max-deg",
        "4",
    ];
    let first = ore(&args);
    let second = ore(&args);
    assert_eq!(first.stdout, second.stdout);

    let args = [
        "verify-context",
        "--json",
        "--ctx",
        "diff-oct",
        "--seed",
        "7",
    ];
    let first = ore(&args);
    let second = ore(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn custom_algebra_from_json() {
    // Round-trip the built-in quaternions through the JSON schema and use
    // them as a custom context.
    let dir = std::env::temp_dir().join("ore_cli_test_algebra");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("quaternions.json");
    std::fs::write(&path, ore_algebra::AlgebraSpec::quaternions().to_json()).unwrap();
    let out = ore(&[
        "mul",
        "--ctx",
        "custom",
        "--algebra",
        path.to_str().unwrap(),
        "e1*e2",
        "1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "e3");
}
