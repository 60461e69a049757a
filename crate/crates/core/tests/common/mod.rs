//! Shared helpers for the integration suites: the golden-case loader and
//! an in-process CLI runner.

use std::fs;
use std::path::{Path, PathBuf};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct Case {
    pub name: String,
    pub expected_exit: i32,
    pub args: Vec<String>,
}

pub fn load_cases() -> Vec<Case> {
    let text = fs::read_to_string(golden_dir().join("cases.txt")).unwrap();
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.splitn(3, '\t');
        let name = cols.next().unwrap().to_string();
        let expected_exit: i32 = cols.next().unwrap().parse().unwrap();
        let args: Vec<String> = cols
            .next()
            .unwrap()
            .split('|')
            .map(|a| {
                if let Some(rest) = a.strip_prefix("@fixtures/") {
                    format!("@{}", golden_dir().join("fixtures").join(rest).display())
                } else if let Some(rest) = a.strip_prefix("{\"finite\":@fixtures/") {
                    let path = golden_dir().join("fixtures").join(rest.trim_end_matches('}'));
                    let payload = fs::read_to_string(path).unwrap();
                    format!("{{\"finite\":{}}}", payload.trim())
                } else {
                    a.to_string()
                }
            })
            .collect();
        out.push(Case { name, expected_exit, args });
    }
    out
}

pub fn run_case(case: &Case) -> (i32, String) {
    let mut argv = vec!["tsys".to_string()];
    argv.extend(case.args.iter().cloned());
    let mut buf = Vec::new();
    let code = tsys::cli::run(&argv, &mut buf);
    (code, String::from_utf8(buf).unwrap())
}
