#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

pub const NUM_TOL: f64 = 1e-12;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn input(name: &str) -> String {
    golden_dir().join("inputs").join(name).to_string_lossy().into_owned()
}

/// Run the binary; returns (exit code, stdout, stderr).
pub fn cfckit(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cfckit"))
        .args(args)
        .env_remove("CFCKIT_TOL")
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Structural JSON equality with a relative tolerance on numbers.
pub fn close(a: &Value, b: &Value, path: &str) -> Result<(), String> {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            if (x - y).abs() <= NUM_TOL * x.abs().max(y.abs()).max(1.0) {
                Ok(())
            } else {
                Err(format!("{path}: {x} vs {y}"))
            }
        }
        (Value::Array(xs), Value::Array(ys)) if xs.len() == ys.len() => xs
            .iter()
            .zip(ys)
            .enumerate()
            .try_for_each(|(i, (x, y))| close(x, y, &format!("{path}[{i}]"))),
        (Value::Object(xs), Value::Object(ys)) if xs.len() == ys.len() => xs.iter().try_for_each(|(k, x)| {
            let y = ys.get(k).ok_or_else(|| format!("{path}.{k}: missing"))?;
            close(x, y, &format!("{path}.{k}"))
        }),
        _ if a == b => Ok(()),
        _ => Err(format!("{path}: {a} vs {b}")),
    }
}

/// Compare `stdout` with `golden/<name>.json`; rewrites it under `UPDATE_GOLDEN`.
pub fn compare_golden(name: &str, stdout: &str) -> Result<(), String> {
    let path = golden_dir().join(format!("{name}.json"));
    let actual: Value = serde_json::from_str(stdout).map_err(|e| format!("{name}: stdout is not JSON: {e}"))?;
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, serde_json::to_string_pretty(&actual).unwrap() + "\n").unwrap();
        return Ok(());
    }
    let text = std::fs::read_to_string(&path).map_err(|_| format!("missing golden {}", path.display()))?;
    let expected: Value = serde_json::from_str(&text).unwrap();
    close(&actual, &expected, name)
}

/// Every golden case: (name, args, expected exit code).
pub fn golden_cases() -> Vec<(&'static str, Vec<String>, i32)> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        ("apply_sqrt", s(&["apply", "--matrix", &input("diag14.json"), "--fn", r#"{"builtin":"sqrt"}"#, "--ring", "nnreal"]), 0),
        ("apply_sqrt_sym", s(&["apply", "--matrix", &input("sym21.json"), "--fn", r#"{"builtin":"sqrt"}"#, "--ring", "nnreal"]), 0),
        ("apply_poly", s(&["apply", "--matrix", &input("sym21.json"), "--fn", r#"{"poly":[[0,0],[0,0],[1,0]]}"#, "--ring", "real"]), 0),
        ("apply_junk", s(&["apply", "--matrix", &input("nilpotent.json"), "--fn", r#"{"builtin":"exp"}"#, "--ring", "complex"]), 0),
        (
            "apply_n_corner",
            s(&["apply-n", "--matrix", &input("e11.json"), "--basis", &input("e11_basis.json"), "--fn", r#"{"builtin":"sqrt"}"#, "--ring", "nnreal"]),
            0,
        ),
        ("apply_n_junk", s(&["apply-n", "--matrix", &input("diag14.json"), "--fn", r#"{"builtin":"exp"}"#, "--ring", "real"]), 0),
        ("spectrum", s(&["spectrum", "--matrix", &input("normal3.json"), "--ring", "real"]), 0),
        ("quasispectrum", s(&["quasispectrum", "--matrix", &input("e11.json"), "--basis", &input("e11_basis.json")]), 0),
        ("check_laws", s(&["check-laws", "--matrix", &input("sym21.json"), "--ring", "real", "--trials", "20", "--seed", "7"]), 0),
        ("unitize_info", s(&["unitize-info", "--matrix", &input("diag14.json")]), 0),
    ]
}

pub fn run_golden(name: &str, args: &[String], expected_code: i32) -> Result<(), String> {
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, stdout, stderr) = cfckit(&args);
    if code != expected_code {
        return Err(format!("{name}: exit {code}, expected {expected_code}: {stderr}"));
    }
    compare_golden(name, &stdout)
}
