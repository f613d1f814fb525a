//! Library side of the `acyclo` command-line tool.
//!
//! [`run`] never touches the process: it returns the exit code and the text
//! for stdout and stderr, which keeps golden tests and embedding simple.
//!
//! Exit codes: 0 success, 2 unusable input or request, 3 budget exceeded,
//! 4 a theorem check or oracle comparison failed.

pub mod commands;
pub mod config;
pub mod input;
pub mod report;

use acyclo_core::complex::complete_hypergraph;
use acyclo_core::{Error, Hypergraph};

pub use config::{Cli, Command, Format, InputSource, RunConfig};
pub use input::{parse_hypergraph, serialize_hypergraph, ParseError};
use report::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_DISAGREEMENT: i32 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        RunOutput {
            code,
            stdout: String::new(),
            stderr: format!("acyclo: {msg}\n"),
        }
    }
}

fn load(source: &InputSource) -> Result<Hypergraph, String> {
    match source {
        InputSource::Complete { n, d } => complete_hypergraph(*n, *d).map_err(|e| e.to_string()),
        InputSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            parse_hypergraph(&text).map_err(|e| format!("{}: {e}", path.display()))
        }
        InputSource::Text(text) => parse_hypergraph(text).map_err(|e| e.to_string()),
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Domain(_) | Error::UnsupportedDegree { .. } => EXIT_PARSE,
    }
}

pub fn run(cfg: &RunConfig) -> RunOutput {
    if cfg.shard.is_some() && !cfg.command.shardable() {
        return RunOutput::fail(
            EXIT_PARSE,
            format!("--shard is not supported by {}", cfg.command.name()),
        );
    }
    if cfg.shard.is_some() && cfg.oracle {
        return RunOutput::fail(EXIT_PARSE, "--oracle needs an unsharded run");
    }
    let h = match load(&cfg.source) {
        Ok(h) => h,
        Err(msg) => return RunOutput::fail(EXIT_PARSE, msg),
    };
    let outcome = match commands::dispatch(cfg.command, &h, cfg) {
        Ok(o) => o,
        Err(e) => return RunOutput::fail(error_code(&e), e),
    };

    let mut top = vec![
        ("command".to_string(), Value::from(cfg.command.name())),
        (
            "input".to_string(),
            Value::record([
                ("n", Value::from(h.n())),
                ("d", Value::from(h.d())),
                (
                    "edges",
                    Value::List(
                        h.edges()
                            .iter()
                            .map(|e| Value::nums(e.iter().copied()))
                            .collect(),
                    ),
                ),
            ]),
        ),
    ];
    if let Some(s) = cfg.shard {
        top.push((
            "shard".to_string(),
            Value::from(format!("{}/{}", s.index, s.total)),
        ));
    }
    top.push(("results".to_string(), Value::Record(outcome.fields)));
    if cfg.oracle || cfg.command == Command::Oracle {
        let reports = outcome
            .oracles
            .iter()
            .map(|r| {
                Value::record([
                    ("quantity", Value::from(r.quantity.as_str())),
                    ("theorem_value", Value::from(r.theorem_value.as_str())),
                    ("oracle_value", Value::from(r.oracle_value.as_str())),
                    ("agreement", Value::from(r.agreement)),
                ])
            })
            .collect();
        top.push(("oracle".to_string(), Value::List(reports)));
    }
    let doc = Value::Record(top);
    let stdout = match cfg.format {
        Format::Json => report::render_json(&doc),
        Format::Csv => report::render_csv(&doc),
        Format::Human => report::render_human(&doc),
    };

    let mut problems: Vec<String> = outcome
        .failed_checks
        .iter()
        .map(|c| format!("theorem check `{c}` failed"))
        .collect();
    problems.extend(outcome.oracles.iter().filter(|r| !r.agreement).map(|r| {
        format!(
            "oracle disagreement on {}: theorem {} vs oracle {}",
            r.quantity, r.theorem_value, r.oracle_value
        )
    }));
    let (code, stderr) = if problems.is_empty() {
        (EXIT_OK, String::new())
    } else {
        let lines: String = problems
            .iter()
            .map(|p| format!("acyclo: DISAGREEMENT: {p}\n"))
            .collect();
        (EXIT_DISAGREEMENT, lines)
    };
    RunOutput {
        code,
        stdout,
        stderr,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(cmd: Command, n: usize, d: usize) -> RunConfig {
        RunConfig::new(cmd, InputSource::Complete { n, d })
    }

    #[test]
    fn volume_of_permutohedron() {
        let out = run(&complete(Command::Volume, 5, 1));
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        assert!(out.stdout.contains("\"volume\": \"125\""));
    }

    #[test]
    fn exit_codes() {
        let bad = RunConfig::new(Command::Volume, InputSource::Text("{\"n\": 3".into()));
        assert_eq!(run(&bad).code, EXIT_PARSE);

        let mut cfg = complete(Command::KalaiCensus, 6, 2);
        cfg.budget = 1000;
        let out = run(&cfg);
        assert_eq!(out.code, EXIT_BUDGET);
        assert!(out.stderr.contains("184756"));

        let mut cfg = complete(Command::Faces, 4, 2);
        cfg.shard = Some(acyclo_core::ShardSpec::new(0, 2).unwrap());
        assert_eq!(run(&cfg).code, EXIT_PARSE);

        assert_eq!(run(&complete(Command::DualityCheck, 4, 2)).code, EXIT_PARSE);
    }

    #[test]
    fn oracle_flag_adds_reports() {
        let mut cfg = complete(Command::Vertices, 4, 2);
        cfg.oracle = true;
        let out = run(&cfg);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        assert!(out.stdout.contains("\"agreement\": true"));
    }
}
