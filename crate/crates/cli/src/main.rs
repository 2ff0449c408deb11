mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hsp_core::HermitianPair;

#[derive(Parser, Debug)]
#[command(name = "hsp", version, about = "Hecke category combinatorics for Hermitian symmetric pairs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Cache directory; caching is off when unset.
    #[arg(long, env = "HSP_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TetrisKind {
    Hook,
    Hole,
    Omega,
}

/// Pair spec such as `A:n=8,k=5`, `C:n=6`, `D/A:n=6`, `E6/D5`.
fn parse_pair(s: &str) -> Result<HermitianPair, String> {
    s.parse().map_err(|e: hsp_core::Error| e.to_string())
}

/// Row lengths of a tile partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rows(pub Vec<usize>);

/// `1,2,3`; empty or `-` for the empty partition.
fn parse_rows(s: &str) -> Result<Rows, String> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Ok(Rows(Vec::new()));
    }
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| format!("bad row length `{x}`")))
        .collect::<Result<_, _>>()
        .map(Rows)
}

/// Tile coordinates `r,c`.
fn parse_tile(s: &str) -> Result<(u8, u8), String> {
    let (r, c) = s.split_once(',').ok_or_else(|| format!("expected r,c, got `{s}`"))?;
    let p = |x: &str| x.trim().parse::<u8>().map_err(|_| format!("bad coordinate `{x}`"));
    Ok((p(r)?, p(c)?))
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Admissible region: coloured tiles and their tile partitions.
    Region {
        #[arg(long, value_parser = parse_pair)]
        pair: HermitianPair,
    },
    /// Bruhat poset of tile partitions with coloured covers.
    Poset {
        #[arg(long, value_parser = parse_pair)]
        pair: HermitianPair,
    },
    /// Paths of shape `lambda` along the canonical word of `mu`.
    Paths {
        #[arg(long, value_parser = parse_pair)]
        pair: HermitianPair,
        #[arg(long, value_parser = parse_rows, allow_hyphen_values = true)]
        lambda: Rows,
        #[arg(long, value_parser = parse_rows, allow_hyphen_values = true)]
        mu: Rows,
    },
    /// Graded decomposition matrix.
    Klmatrix {
        #[arg(long, value_parser = parse_pair)]
        pair: HermitianPair,
    },
    /// Compare the path-counting matrix against the Hecke algebra oracle.
    OracleVerify {
        #[arg(long, value_parser = parse_pair)]
        pair: HermitianPair,
    },
    /// Hook, hole or spot-decoration data for a tile of `mu`.
    Tetris {
        #[arg(long, value_parser = parse_pair)]
        pair: HermitianPair,
        #[arg(long, value_parser = parse_rows, allow_hyphen_values = true)]
        mu: Rows,
        /// Tile `r,c`.
        #[arg(long, value_parser = parse_tile)]
        tile: (u8, u8),
        #[arg(long, value_enum, default_value_t = TetrisKind::Hook)]
        kind: TetrisKind,
    },
    /// Contraction tiling and contracted pair at node `tau`.
    Contract {
        #[arg(long, value_parser = parse_pair)]
        pair: HermitianPair,
        #[arg(long)]
        tau: u8,
    },
    /// Combinatorial invariance over closed subsets of the given pairs.
    InvarianceScan {
        /// Repeatable; defaults to A:n<=5, D/A:n=5 and D/D:n=6.
        #[arg(long, value_parser = parse_pair)]
        pair: Vec<HermitianPair>,
        #[arg(long, default_value_t = 8)]
        max_interval_size: usize,
        /// Include every comparison in the report, not just failures.
        #[arg(long)]
        all_entries: bool,
    },
    /// Koszul resolution multiplicities; `--lambda` selects one resolution.
    Koszul {
        #[arg(long, value_parser = parse_pair)]
        pair: HermitianPair,
        #[arg(long, value_parser = parse_rows, allow_hyphen_values = true)]
        lambda: Option<Rows>,
        /// Also check the inverse identity and tau-independence.
        #[arg(long)]
        verify: bool,
    },
    /// Quick verification over the standard suite of pairs.
    Selftest,
}

/// Failure modes mapped to exit codes.
pub enum Failure {
    /// Exit 1, with a report already printed.
    Verification,
    /// Exit 2.
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<hsp_core::Error> for Failure {
    fn from(e: hsp_core::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
