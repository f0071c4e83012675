//! Shared helpers for driving the `trate` binary in tests.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub const BIN: &str = env!("CARGO_BIN_EXE_trate");

/// Golden outputs: file name under `tests/golden` and the `trate` arguments
/// producing it. Fixture names are resolved against `tests/fixtures`.
pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    ("school.txt", &["solve", "@school.json"]),
    ("school.json", &["solve", "@school.json", "--format", "json"]),
    ("school.csv", &["solve", "@school.json", "--format", "csv"]),
    ("single.txt", &["single", "@single.json", "--method", "lca"]),
];

/// Malformed inputs with the expected exit code and a fragment of the
/// diagnostic.
pub const EXIT_CASES: &[(&str, i32, &str)] = &[
    ("school.json", 0, ""),
    ("syntax_error.json", 2, "line 5, column 13"),
    ("dimension_mismatch.json", 2, "2x2 but 3 alternative matrices"),
    ("reciprocity_violation.json", 1, "(1,2)"),
    ("zero_entry.json", 1, "(1,2)"),
    ("bad_fraction.json", 2, "1/0"),
];

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture(name: &str) -> PathBuf {
    manifest_dir().join("tests/fixtures").join(name)
}

pub fn golden(name: &str) -> PathBuf {
    manifest_dir().join("tests/golden").join(name)
}

/// Runs `trate`, expanding `@name` arguments to fixture paths.
pub fn trate(args: &[&str]) -> Output {
    let args: Vec<PathBuf> = args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(name) => fixture(name),
            None => PathBuf::from(a),
        })
        .collect();
    Command::new(BIN)
        .args(&args)
        .output()
        .expect("failed to spawn trate")
}

/// Compares a run against its golden file, or rewrites the file when
/// `UPDATE_GOLDEN` is set.
pub fn check_golden(name: &str, args: &[&str]) -> Result<(), String> {
    let output = trate(args);
    if !output.status.success() {
        return Err(format!(
            "{name}: trate exited with {:?}: {}",
            output.status.code(),
            String::from_utf8_lossy(&output.stderr)
        ));
    }
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &output.stdout).map_err(|e| format!("{name}: {e}"))?;
        return Ok(());
    }
    let expected = std::fs::read(&path).map_err(|e| format!("{name}: {e}"))?;
    if expected != output.stdout {
        return Err(format!(
            "{name}: output differs from golden file\n--- expected\n{}\n--- got\n{}",
            String::from_utf8_lossy(&expected),
            String::from_utf8_lossy(&output.stdout)
        ));
    }
    Ok(())
}

/// Runs `validate` on a fixture and checks the exit code and message.
pub fn check_exit(name: &str, expected: i32, needle: &str) -> Result<(), String> {
    let output = trate(&["validate", &format!("@{name}")]);
    let code = output.status.code();
    let stderr = String::from_utf8_lossy(&output.stderr);
    if code != Some(expected) {
        return Err(format!("{name}: exit {code:?}, expected {expected}: {stderr}"));
    }
    if !stderr.contains(needle) {
        return Err(format!("{name}: diagnostic lacks `{needle}`: {stderr}"));
    }
    Ok(())
}

/// Runs the same command twice and requires byte-identical output.
pub fn check_deterministic(args: &[&str]) -> Result<(), String> {
    let first = trate(args);
    let second = trate(args);
    if first.stdout != second.stdout || first.stderr != second.stderr {
        return Err(format!("{args:?}: output differs between runs"));
    }
    Ok(())
}
