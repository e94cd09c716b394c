//! Golden-case table shared by the CLI tests and the acceptance harness.

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: String,
    pub exit: i32,
    pub args: Vec<String>,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data")
}

pub fn cases() -> Vec<Case> {
    let table = std::fs::read_to_string(golden_dir().join("cases.txt")).unwrap();
    let data = data_dir();
    let data = data.to_str().unwrap();
    table
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let parts: Vec<&str> = l.split('|').map(str::trim).collect();
            assert_eq!(parts.len(), 3, "bad case line: {l}");
            Case {
                name: parts[0].to_string(),
                exit: parts[1].parse().unwrap(),
                args: parts[2].split_whitespace().map(|a| a.replace("{data}", data)).collect(),
            }
        })
        .collect()
}

/// Runs the binary, returning stdout and the exit code.
pub fn run(args: &[String]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_semilat")).args(args).output().unwrap();
    (out.stdout, out.status.code().unwrap_or(-1))
}

pub fn expected(case: &Case) -> Option<Vec<u8>> {
    std::fs::read(golden_dir().join(format!("{}.out", case.name))).ok()
}
