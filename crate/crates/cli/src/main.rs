//! `dha`: command-line access to the q,t-Catalan statistics, string starter
//! counts, alternant bases and the property suites.
//!
//! Every command prints one JSON document `{"command", "params", "payload"}`
//! (or a plain table with `--format table`). Exit status is 0 on success, 1
//! when a checked property fails or a computation cannot finish, 2 on usage
//! errors.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "dha", version, about = "Diagonal harmonic alternants and q,t-Catalan statistics")]
pub struct Cli {
    /// Directory for cached span records (one JSON file per n, a, b).
    #[arg(long, global = true, env = "DHA_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Largest n any command accepts.
    #[arg(long, global = true, default_value_t = 10)]
    pub max_n: usize,

    /// Largest n for commands that build spans of alternants
    /// (kernel starters, bases, the sl2 and allen suites).
    #[arg(long, global = true, default_value_t = 6)]
    pub span_max_n: usize,

    /// Seed for the random polynomials of the commutator suite.
    #[arg(long, global = true, default_value_t = 20240611)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Stat {
    Bounce,
    Dinv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Grid,
    Qseries,
    Moments,
    Kernel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Decreasing,
    Increasing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Commutators,
    Harmonicity,
    Sl2,
    Musum,
    Allen,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The q,t-Catalan polynomial and its coefficient grid.
    Qtcatalan {
        n: usize,
        #[arg(long, value_enum, default_value_t = Stat::Bounce)]
        stat: Stat,
    },
    /// Number of sl(2) string starters, by one of four methods.
    Starters {
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Qseries)]
        method: Method,
        /// With the kernel method, also print each starter fully expanded.
        #[arg(long)]
        expand: bool,
    },
    /// E-word bases of the alternants at one or all bi-degrees.
    Basis {
        n: usize,
        /// Bi-degree as `a,b` (x-degree, y-degree).
        #[arg(long, value_parser = parse_bidegree, conflicts_with = "all")]
        bidegree: Option<(usize, usize)>,
        #[arg(long)]
        all: bool,
        /// Use the co-partition construction instead of E-words.
        #[arg(long)]
        allen: bool,
        /// Order in which co-partitions are tried.
        #[arg(long, value_enum, default_value_t = Order::Decreasing, requires = "allen")]
        order: Order,
    },
    /// Runs property suites and reports pass or fail.
    Verify {
        n: usize,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Random polynomials per generator pair in the commutator suite.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Pointwise check of the hook-product sum against c_n(q,t).
    Musum { n: usize },
    /// Dyck paths with their area, bounce and dinv.
    Dyck { n: usize },
    /// Integer partitions of n.
    Partitions {
        n: usize,
        #[arg(long)]
        max_part: Option<usize>,
        #[arg(long)]
        length: Option<usize>,
        /// Keep only partitions inside the staircase (m, m-1, ..., 1).
        #[arg(long)]
        staircase: Option<usize>,
    },
}

fn parse_bidegree(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a,b but got {s:?}"))?;
    let a = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => {
                    let doc = serde_json::json!({
                        "command": out.command,
                        "params": out.params,
                        "payload": out.payload,
                    });
                    serde_json::to_string_pretty(&doc).expect("JSON values always serialize") + "\n"
                }
                Format::Table => out.table,
            };
            // a closed pipe downstream is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if out.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("dha: {} reported failures", out.command);
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("dha: {e}");
            ExitCode::from(e.code())
        }
    }
}
