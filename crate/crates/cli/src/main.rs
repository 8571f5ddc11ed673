//! `checker`: command-line front end for checker surfaces.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input (usage or
//! schema), 3 enumeration budget exceeded, 4 internal invariant violated.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "checker", version, about = "Checker triangulated surfaces, double cosets and their algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Suppress diagnostics on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    /// Write the result to this file (atomically) instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Canonical form of a (labelled) surface with its invariants.
    Canon {
        input: PathBuf,
        /// Number of black labels (overrides the file).
        #[arg(long)]
        alpha: Option<usize>,
        /// Number of white labels (overrides the file).
        #[arg(long)]
        beta: Option<usize>,
    },
    /// The ⊛ product of two double cosets, computed algebraically and by gluing.
    #[command(name = "coset-product", alias = "product")]
    CosetProduct {
        p: PathBuf,
        q: PathBuf,
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long)]
        beta: Option<usize>,
        #[arg(long)]
        gamma: Option<usize>,
    },
    /// σ_n and the full decomposition of δ_p ∗ δ_q for a range of degrees.
    Concentrate {
        p: PathBuf,
        q: PathBuf,
        #[arg(long, default_value_t = 4)]
        n_from: usize,
        #[arg(long, default_value_t = 9)]
        n_to: usize,
    },
    /// Spherical function by assignment sum and by direct inner product.
    Spherical {
        surface: PathBuf,
        xi: PathBuf,
        /// Rescale ξ to unit norm first.
        #[arg(long)]
        normalize: bool,
        /// Limit on enumerated terms for either computation.
        #[arg(long, default_value_t = 100_000_000)]
        max_assignments: u128,
    },
    /// u_p ∘ u_q in the algebra of all finite surfaces.
    #[command(name = "ik-product")]
    IkProduct {
        p: PathBuf,
        q: PathBuf,
        /// Limit on the number of partial bijections.
        #[arg(long, default_value_t = 1_000_000)]
        max_terms: u128,
    },
    /// Π_n of a surface or linear combination.
    #[command(name = "ik-project")]
    IkProject {
        input: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Poisson bracket {u_p, u_q}.
    Poisson {
        p: PathBuf,
        q: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        max_terms: u128,
    },
    /// Dessin d'enfant of a surface (DOT by default).
    Dessin { input: PathBuf },
    /// Classes of pairs up to simultaneous conjugation, checked against Burnside's lemma.
    Census {
        #[arg(long)]
        n: usize,
    },
    /// A uniform random triple.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        alpha: usize,
        #[arg(long, default_value_t = 0)]
        beta: usize,
        /// Emit a pair (g₁, g₂, id) instead of a triple.
        #[arg(long)]
        pair: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli).and_then(|text| output::emit(&cli.global, &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("checker: {}", failure.message);
            ExitCode::from(failure.code())
        }
    }
}
