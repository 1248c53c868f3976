mod commands;
mod manifest;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Sink;

/// Failures that end a run with exit code 2.
pub type Result<T> = std::result::Result<T, String>;

#[derive(Debug, Parser)]
#[command(
    name = "cyclotome",
    version,
    about = "Exact tools for cyclotomic integer symmetric matrices"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Where long runs record their manifest.
    #[arg(long, global = true, value_name = "PATH", default_value = "cyclotome-manifest.json")]
    pub manifest: PathBuf,

    /// Do not write a manifest.
    #[arg(long, global = true)]
    pub no_manifest: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct InputArg {
    /// CSG or ISM file; standard input when omitted or `-`.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ModeArgs {
    /// Allow charged vertices.
    #[arg(long)]
    pub charged: bool,
    /// All edges positive.
    #[arg(long)]
    pub unsigned: bool,
    /// Require eigenvalues in (-2, 2).
    #[arg(long)]
    pub open: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Decide whether all eigenvalues lie in [-2, 2] (or (-2, 2) with --open).
    Check {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        open: bool,
        /// Print the evidence behind the verdict.
        #[arg(long)]
        certificate: bool,
    },
    /// Characteristic polynomial det(xI - A).
    Charpoly {
        #[command(flatten)]
        input: InputArg,
    },
    /// Factor z^n chi(z + 1/z) into cyclotomic polynomials.
    Cycfactor {
        #[command(flatten)]
        input: InputArg,
    },
    /// Canonical representative of the equivalence class.
    Canon {
        #[command(flatten)]
        input: InputArg,
        /// Also allow global negation.
        #[arg(long)]
        weak: bool,
    },
    /// Test two graphs for equivalence and print a witness.
    Equiv { first: PathBuf, second: PathBuf },
    /// Named maximal graphs and families.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Exhaustive searches.
    Search {
        #[command(subcommand)]
        target: SearchTarget,
    },
    /// All connected classes up to a vertex count, as CSG records.
    Enumerate {
        #[arg(long, value_name = "N")]
        max_n: usize,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        maximal_only: bool,
        /// Worker count; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Grow a graph to the maximal graphs containing it.
    Grow {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        mode: ModeArgs,
        /// Stop extending at this many vertices.
        #[arg(long, default_value_t = cyclotome::search::DEFAULT_CAP)]
        cap: usize,
    },
    /// Compare every tabulated polynomial with the built graphs.
    VerifyTables,
    /// Weighted Gram vectors realising A + 2I.
    Gram {
        #[command(flatten)]
        input: InputArg,
    },
    /// Randomised consistency checks of the exact routines.
    Selftest {
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Re-run a manifest and compare result digests.
    Replay { manifest: PathBuf },
}

#[derive(Debug, Clone, Subcommand)]
pub enum CatalogAction {
    /// List the families and their parameters.
    List,
    /// Print one member as CSG.
    Get { name: String, params: Vec<usize> },
}

#[derive(Debug, Clone, Subcommand)]
pub enum SearchTarget {
    /// Maximal triangle-free induced subgraphs of the E8 line graph.
    E8 {
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Resume from and record progress in this file.
        #[arg(long, value_name = "PATH")]
        checkpoint: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut sink = Sink::stdout();
    match commands::run_with_manifest(&cli, &argv[1..], &mut sink) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
