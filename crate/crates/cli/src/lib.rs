//! Command-line front end: graph export, parameter reports, table
//! reproduction and verification suites.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use hhkit::FamilyParams;

pub mod export;
pub mod report;
pub mod suites;
pub mod tables;

pub use report::{Entry, Report};

#[derive(Parser, Debug)]
#[command(name = "hhkit", version, about = "Exact computations on H(n:r), Kneser graphs and the shift graph")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a graph as an edge list or JSON.
    Gen {
        family: Family,
        n: u8,
        /// Tail or subset size (hh, kneser).
        r: Option<u8>,
        /// Output file; an edge list also gets `<out>.labels.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
    },
    /// Compare closed forms with computed values for H(n:r).
    Params {
        n: u8,
        r: u8,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute a reference table (1: independence, 2: chromatic, 3: fractional chromatic).
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        /// Wall-clock budget in seconds for the whole table.
        #[arg(long, default_value_t = 600.0)]
        budget: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        theorem: Theorem,
        /// Largest n of the default grid to include.
        #[arg(long)]
        n_max: Option<u8>,
        /// Comma-separated `n:r` instances replacing the default grid.
        #[arg(long, value_delimiter = ',')]
        instances: Option<Vec<Instance>>,
        #[arg(long, default_value_t = 600.0)]
        budget: f64,
        /// Pairs of class OTHER sampled per large distinguisher instance.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Seed for the pair sampler.
        #[arg(long, default_value_t = suites::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Hh,
    Kneser,
    Complete,
    Shift,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Edges,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Diameter,
    Hhog,
    Subgraphs,
    Bestindybd,
    Twobigsets,
    Recursivebd,
    Tailchi,
    #[value(name = "s_n_embed")]
    SNEmbed,
    Frachom,
    Quotient,
    Aut,
    Distinguisher,
}

/// An `n:r` pair on the command line.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Instance(pub FamilyParams);

impl FromStr for Instance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, r) = s.split_once(':').ok_or_else(|| format!("expected n:r, got {s:?}"))?;
        let n: u8 = n.trim().parse().map_err(|e| format!("bad n in {s:?}: {e}"))?;
        let r: u8 = r.trim().parse().map_err(|e| format!("bad r in {s:?}: {e}"))?;
        FamilyParams::new(n, r).map(Instance).map_err(|e| e.to_string())
    }
}

/// Caps the global thread pool at `HHKIT_THREADS` when set.
pub fn configure_threads() -> Result<(), String> {
    if let Ok(v) = std::env::var("HHKIT_THREADS") {
        let n: usize = v.parse().map_err(|_| format!("HHKIT_THREADS must be a positive integer, got {v:?}"))?;
        if n == 0 {
            return Err("HHKIT_THREADS must be positive".into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

/// Runs one command. Returns the report (none for `gen`) and any text for
/// standard output.
pub fn run(cli: Cli) -> Result<(Option<Report>, String), String> {
    match cli.command {
        Command::Gen {
            family,
            n,
            r,
            out,
            format,
        } => export::gen(family, n, r, out.as_deref(), format).map(|text| (None, text)),
        Command::Params { n, r, out } => {
            let report = tables::params(n, r)?;
            finish(report, out)
        }
        Command::Table { which, budget, out } => finish(tables::table(which, budget)?, out),
        Command::Verify {
            theorem,
            n_max,
            instances,
            budget,
            samples,
            seed,
            out,
        } => {
            let opts = suites::Options {
                n_max,
                instances: instances.map(|v| v.into_iter().map(|i| i.0).collect()),
                budget,
                samples,
                seed,
            };
            finish(suites::verify(theorem, &opts), out)
        }
    }
}

fn finish(report: Report, out: Option<PathBuf>) -> Result<(Option<Report>, String), String> {
    if let Some(path) = out {
        let body = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
        std::fs::write(&path, body + "\n").map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    let text = report.to_text();
    Ok((Some(report), text))
}
