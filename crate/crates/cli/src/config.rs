use std::path::PathBuf;

use acyclo_core::census::DEFAULT_BUDGET;
use acyclo_core::ShardSpec;
use clap::{ArgGroup, Parser, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Volume,
    Ehrhart,
    LatticePoints,
    KalaiCensus,
    DualityCheck,
    Vertices,
    Faces,
    Facets,
    TournamentCheck,
    Oracle,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Volume => "volume",
            Command::Ehrhart => "ehrhart",
            Command::LatticePoints => "lattice-points",
            Command::KalaiCensus => "kalai-census",
            Command::DualityCheck => "duality-check",
            Command::Vertices => "vertices",
            Command::Faces => "faces",
            Command::Facets => "facets",
            Command::TournamentCheck => "tournament-check",
            Command::Oracle => "oracle",
        }
    }

    /// Subcommands whose enumeration can be split with `--shard`.
    pub fn shardable(self) -> bool {
        matches!(
            self,
            Command::Volume | Command::KalaiCensus | Command::Vertices
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Human,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputSource {
    /// `K^{(d+1)}_n`.
    Complete {
        n: usize,
        d: usize,
    },
    File(PathBuf),
    /// A document given inline; used by tests and embedding callers.
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub source: InputSource,
    pub format: Format,
    pub budget: u64,
    pub shard: Option<ShardSpec>,
    pub oracle: bool,
}

impl RunConfig {
    pub fn new(command: Command, source: InputSource) -> Self {
        RunConfig {
            command,
            source,
            format: Format::Json,
            budget: DEFAULT_BUDGET,
            shard: None,
            oracle: false,
        }
    }
}

/// Exact zonotope computations on hypergraphs.
#[derive(Debug, Parser)]
#[command(name = "acyclo", version)]
#[command(group(ArgGroup::new("source").required(true).args(["complete", "input"])))]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,

    /// Use the complete hypergraph K^(D+1)_N.
    #[arg(long, num_args = 2, value_names = ["N", "D"])]
    pub complete: Option<Vec<usize>>,

    /// Read a hypergraph document.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Largest candidate count an enumeration may face.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    /// Only enumerate shard I of M.
    #[arg(long, value_name = "I/M", value_parser = parse_shard)]
    pub shard: Option<ShardSpec>,

    /// Cross-check against brute-force oracles.
    #[arg(long)]
    pub oracle: bool,
}

pub fn parse_shard(s: &str) -> Result<ShardSpec, String> {
    let (i, m) = s
        .split_once('/')
        .ok_or_else(|| format!("expected I/M, got `{s}`"))?;
    let i: usize = i
        .trim()
        .parse()
        .map_err(|_| format!("bad shard index `{i}`"))?;
    let m: usize = m
        .trim()
        .parse()
        .map_err(|_| format!("bad shard total `{m}`"))?;
    ShardSpec::new(i, m).map_err(|e| e.to_string())
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        let source = match (self.complete, self.input) {
            (Some(nd), None) => InputSource::Complete { n: nd[0], d: nd[1] },
            (None, Some(path)) => InputSource::File(path),
            _ => unreachable!("clap enforces exactly one input source"),
        };
        RunConfig {
            command: self.command,
            source,
            format: self.format,
            budget: self.budget,
            shard: self.shard,
            oracle: self.oracle,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, clap::Error> {
        Cli::try_parse_from(std::iter::once("acyclo").chain(args.iter().copied()))
            .map(Cli::into_config)
    }

    #[test]
    fn grammar() {
        let c = parse(&[
            "kalai-census",
            "--complete",
            "5",
            "2",
            "--shard",
            "1/4",
            "--oracle",
        ])
        .unwrap();
        assert_eq!(c.command, Command::KalaiCensus);
        assert_eq!(c.source, InputSource::Complete { n: 5, d: 2 });
        assert_eq!(c.shard, Some(ShardSpec { index: 1, total: 4 }));
        assert!(c.oracle);
        assert_eq!(c.budget, DEFAULT_BUDGET);

        let c = parse(&[
            "lattice-points",
            "--input",
            "g.json",
            "--format",
            "csv",
            "--budget",
            "9",
        ])
        .unwrap();
        assert_eq!(c.source, InputSource::File("g.json".into()));
        assert_eq!(c.format, Format::Csv);
        assert_eq!(c.budget, 9);
    }

    #[test]
    fn exactly_one_source() {
        assert!(parse(&["volume"]).is_err());
        assert!(parse(&["volume", "--complete", "4", "1", "--input", "x"]).is_err());
        assert!(parse(&["volume", "--complete", "4"]).is_err());
    }

    #[test]
    fn shard_spec() {
        assert!(parse_shard("3/3").is_err());
        assert!(parse_shard("0/0").is_err());
        assert!(parse_shard("1-2").is_err());
        assert_eq!(
            parse_shard("2/3").unwrap(),
            ShardSpec { index: 2, total: 3 }
        );
    }

    #[test]
    fn names_match_clap() {
        for c in Command::value_variants() {
            assert_eq!(c.to_possible_value().unwrap().get_name(), c.name());
        }
    }
}
