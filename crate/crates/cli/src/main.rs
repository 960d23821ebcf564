//! `toruscalc` command-line front end. JSON goes to stdout, diagnostics to
//! stderr.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Environment variable consulted when `--budget` is absent.
pub const BUDGET_ENV: &str = "TORUSCALC_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "toruscalc", version, about = "Exact invariants for torus-surgery homotopy 4-spheres")]
struct Cli {
    /// Output is always JSON; accepted for scripts that pass it.
    #[arg(long, global = true)]
    json: bool,

    /// Fill in `elapsed_ms` (otherwise null, keeping output reproducible).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
#[command(rename_all = "kebab-case")]
enum Command {
    /// Certify one member of the sphere family.
    VerifySphere {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        mp: i64,
        #[arg(long, allow_negative_numbers = true)]
        np: i64,
        /// Maximum simultaneous cosets.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Verify every tuple in [-R, R]^4.
    Scan {
        #[arg(long, allow_negative_numbers = true)]
        range: i64,
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// List Cappell-Shaneson monodromies with small entries.
    CsSearch {
        #[arg(long, allow_negative_numbers = true)]
        bound: i64,
    },
    /// Factor a determinant-one matrix into unit transvections.
    Factor {
        /// Rows separated by `;`, entries by `,`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Invariants of the T^3-bundle with the given 3x3 monodromy.
    MtH1 {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Linking matrix, homology and simplification of Y(m, n).
    Y3 {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// H_1 of surgery on a framed link given by its linking matrix.
    LinkH1 {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Homomorphism counts into small finite groups.
    Census {
        /// `gens: a,b / rels: a^2; b^3` or the JSON form.
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        presentation: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Largest target order.
        #[arg(long, default_value_t = 120)]
        bound: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(cli.command, cli.timing) {
        Ok((json, code)) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = writeln!(out, "{json}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
