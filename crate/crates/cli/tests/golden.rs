//! Bit-exact golden outputs for the corpus in `testdata/cases.txt`.
//!
//! Successful runs are compared on stdout, failing runs on stderr. Set
//! `ACYCLO_BLESS=1` to rewrite the golden files after an intended change.

use std::fs;
use std::path::PathBuf;

use acyclo::{run, Cli, EXIT_DISAGREEMENT};
use clap::Parser;

struct Case {
    name: String,
    code: i32,
    args: Vec<String>,
}

fn testdata() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("testdata")
}

fn cases() -> Vec<Case> {
    let text = fs::read_to_string(testdata().join("cases.txt")).unwrap();
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut words = l.split_whitespace().map(String::from);
            Case {
                name: words.next().unwrap(),
                code: words.next().unwrap().parse().unwrap(),
                args: words.collect(),
            }
        })
        .collect()
}

#[test]
fn golden_corpus() {
    // relative input paths in the manifest, and in error messages
    std::env::set_current_dir(testdata()).unwrap();
    let bless = std::env::var_os("ACYCLO_BLESS").is_some();
    let mut failures = Vec::new();
    let all = cases();
    assert!(all.len() >= 30);

    for case in &all {
        let argv = std::iter::once("acyclo".to_string()).chain(case.args.iter().cloned());
        let cfg = Cli::try_parse_from(argv)
            .unwrap_or_else(|e| panic!("{}: bad arguments: {e}", case.name))
            .into_config();
        let out = run(&cfg);
        assert_ne!(out.code, EXIT_DISAGREEMENT, "{}: {}", case.name, out.stderr);
        if out.code != case.code {
            failures.push(format!(
                "{}: exit {} (expected {}): {}",
                case.name, out.code, case.code, out.stderr
            ));
            continue;
        }
        let (ext, actual) = if case.code == 0 {
            ("out", &out.stdout)
        } else {
            ("err", &out.stderr)
        };
        let path = testdata()
            .join("golden")
            .join(format!("{}.{ext}", case.name));
        if bless {
            fs::write(&path, actual).unwrap();
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(expected) if &expected == actual => {}
            Ok(_) => failures.push(format!(
                "{}: output differs from {}",
                case.name,
                path.display()
            )),
            Err(_) => failures.push(format!(
                "{}: missing golden file {}",
                case.name,
                path.display()
            )),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
