//! The binary end to end: exit codes, reports and the validation gate.

use std::process::{Command, Output};
use std::sync::OnceLock;

use tempfile::TempDir;

fn glbc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glbc")).args(args).output().expect("binary runs")
}

/// A cache directory holding a validation record, shared by the tests.
fn validated() -> &'static str {
    static DIR: OnceLock<TempDir> = OnceLock::new();
    let dir = DIR.get_or_init(|| {
        let d = TempDir::new().unwrap();
        let out = glbc(&["oracle", "--cache-dir", d.path().to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        d
    });
    dir.path().to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_refuses_without_validation_record() {
    let d = TempDir::new().unwrap();
    let out = glbc(&["verify", "linear-periods", "--two-n", "4", "--q", "2", "--cache-dir", d.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("glbc oracle"));
}

#[test]
fn verify_with_certify_writes_record() {
    let d = TempDir::new().unwrap();
    let dir = d.path().to_str().unwrap();
    let out = glbc(&["verify", "torus-periods", "--q", "3", "--certify", "--cache-dir", dir]);
    assert_eq!(out.status.code(), Some(0));
    assert!(d.path().join("green_validation.json").exists());
}

#[test]
fn linear_periods_small_case() {
    let out = glbc(&["verify", "linear-periods", "--two-n", "4", "--q", "2", "--cache-dir", validated()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let ms: Vec<u64> = rows.iter().map(|r| r["m"].as_u64().unwrap()).collect();
    assert_eq!(ms, [0, 1, 0]);
    for key in ["inputs", "m", "m_E", "m_tilde", "predicted", "computed", "pass", "counterexamples", "wall_ms"] {
        assert!(rows[0].get(key).is_some(), "{key}");
    }
}

#[test]
fn reports_are_deterministic_and_csv_has_columns() {
    let args = ["verify", "linear-periods", "--two-n", "2", "--q", "3", "--format", "csv", "--cache-dir", validated()];
    let a = glbc(&args);
    let b = glbc(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(
        text.lines().next().unwrap(),
        "verifier,q,n,theta_orbit_rep,chi1,chi2,predicted,computed,pass,wall_ms"
    );
    assert_eq!(text.lines().count(), 1 + 3 * 2 * 2);
}

#[test]
fn torus_pattern_passes() {
    let out = glbc(&["verify", "torus-periods", "--q", "3", "--cache-dir", validated()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for r in v["rows"].as_array().unwrap() {
        assert!(r["computed"].as_str().unwrap().starts_with("2 appear"), "{r}");
    }
}

#[test]
fn out_of_bounds_exits_two() {
    let out = glbc(&["verify", "linear-periods", "--two-n", "40", "--q", "9", "--cache-dir", validated()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bound"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(glbc(&["verify", "no-such-verifier", "--cache-dir", validated()]).status.code(), Some(2));
    assert_eq!(glbc(&["verify", "linear-periods", "--q", "3", "--cache-dir", validated()]).status.code(), Some(2));
    assert_eq!(glbc(&["verify", "torus-periods", "--n", "2", "--q", "3", "--cache-dir", validated()]).status.code(), Some(2));
    assert_eq!(glbc(&["mult", "--spec", "cuspidal:4:2:3", "--sub", "levi", "--chi", "0"]).status.code(), Some(2));
    assert_eq!(glbc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn output_file_matches_stdout() {
    let d = TempDir::new().unwrap();
    let path = d.path().join("report.json");
    let base = ["verify", "subfield-distinction", "--n", "1", "--q", "3", "--cache-dir", validated()];
    let printed = glbc(&base);
    let mut args = base.to_vec();
    args.extend(["--out", path.to_str().unwrap()]);
    assert_eq!(glbc(&args).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim_end(), stdout(&printed).trim_end());
}

#[test]
fn mult_twisted_example() {
    let out = glbc(&["mult", "--spec", "cuspidal:4:2:3", "--sub", "weil", "--chi", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["m"], 1);
    assert_eq!(v["method"], "both");
    assert_eq!(v["wall_ms"], 0);
}

#[test]
fn mult_full_form_and_tensor_products() {
    // PGL_2(F_5): a cuspidal with itself and the trivial character
    let out = glbc(&[
        "mult", "--spec", "cuspidal:2:5:4", "--spec", "cuspidal:2:5:4", "--sub", "pgl:2:1", "--chi", "0",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["m"], 1);
}

#[test]
fn char_values() {
    // the identity class gives the degree q - 1
    let out = glbc(&["char", "--spec", "cuspidal:2:3:1", "--class", "q3:n2:[x+2|1,1]"]);
    assert_eq!(stdout(&out).trim(), "2");
    // x + 1 over F_3 is the class of -1, where the value is (q - 1)θ(-1)
    let out = glbc(&["char", "--spec", "cuspidal:2:3:1", "--class", "q3:n2:[x+1|1,1]"]);
    assert_eq!(stdout(&out).trim(), "-2");
    let out = glbc(&["char", "--spec", "cuspidal:2:3:1", "--class", "q3:n2:[x+3|1,1]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_table_summary() {
    let d = TempDir::new().unwrap();
    let dir = d.path().to_str().unwrap();
    let out = glbc(&["oracle", "--group", "gl:2:3", "--cache-dir", dir]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rows"], 8);
    assert_eq!(v["order"], 48);
    assert!(d.path().join("table_gl2_q3.json").exists());
    let out = glbc(&["char", "--spec", "oracle:gl2_q3:7:2:3", "--class", "q3:n2:[x+2|1,1]", "--cache-dir", dir]);
    assert_eq!(stdout(&out).trim(), "4");
}
