//! End-to-end tests of the binary: determinism, exit codes, formats and
//! the output-directory environment variable.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lzfun"))
}

#[test]
fn eval_le2_matches_closed_form_in_csv() {
    let out = bin()
        .args(["eval-le2", "--s", "2.5", "--format", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "label,value,err_est");
    let row = lines.next().unwrap();
    // quadrature value close to -24 (2pi)^{-s} Gamma(s) zeta(s) zeta(s-1)
    assert!(row.contains("-1.1298476826069"), "row: {row}");
}

#[test]
fn sweep_is_bit_identical_for_fixed_seed() {
    let run = || {
        let out = bin()
            .args([
                "sweep", "--s", "1.4", "--count", "3", "--seed", "42", "--format", "csv",
                "--budget", "fast",
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a, b, "sweep output must be bit-identical for a fixed seed");
    assert!(a.lines().count() == 4); // header + 3 rows
}

#[test]
fn verify_single_suite_exits_zero() {
    let out = bin()
        .args([
            "verify",
            "--suite",
            "functional-equation",
            "--budget",
            "fast",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "verify failed: {:?}", out);
    let text = String::from_utf8(out.stdout).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["command"], "verify");
    let records = doc["records"].as_array().unwrap();
    assert!(!records.is_empty());
    for r in records {
        assert_eq!(r["pass"], true);
    }
}

#[test]
fn verify_rejects_unknown_suite() {
    let out = bin().args(["verify", "--suite", "no-such"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_lz_on_singular_set_fails_with_record() {
    // z on the imaginary axis lies in the singular set
    let out = bin()
        .args(["eval-lz", "--z", "0+2i", "--s", "1.4", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert!(doc["error"].as_str().unwrap().contains("singular set"));
}

#[test]
fn output_dir_env_var_is_honored() {
    let dir = std::env::temp_dir().join(format!("lzfun-test-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let out = bin()
        .args(["eval-le2", "--s", "1.5", "--format", "csv", "--output", "le2.csv"])
        .env("LZFUN_OUTPUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let written = std::fs::read_to_string(dir.join("le2.csv")).unwrap();
    assert!(written.starts_with("label,value,err_est"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn limit_csv_has_documented_columns() {
    let out = bin()
        .args([
            "limit", "--s", "1.5", "--x", "0.3", "--y", "16,32", "--format", "csv",
        ])
        .output()
        .unwrap();
    // two rungs is below the 3-rung minimum: expect a clean failure
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args([
            "limit", "--s", "1.5", "--x", "0.3", "--y", "16,32,64", "--format", "csv",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "y,l_z,subtracted_residual,fit_a,target,rel_error"
    );
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn complex_argument_parsing_variants() {
    for (z, ok) in [
        ("0.27+1.31i", true),
        ("-0.4+0.9i", true),
        ("2i", true),
        ("1.4", false),  // real axis is not in the upper half-plane
        ("0.3-1.2i", false),
    ] {
        let out = bin()
            .args(["eval-eisenstein", "--k", "0", "--w", "1.5", "--tau", z, "--radius", "24"])
            .output()
            .unwrap();
        assert_eq!(out.status.success(), ok, "tau = {z}");
    }
}
