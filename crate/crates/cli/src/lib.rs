//! Command-line front end for the medlat workbench.
//!
//! Every command returns an [`Outcome`]; the binary prints it and exits with
//! its code. Exit codes: `0` valid / pass / found, `1` invalid / fail / none
//! found, `2` error or unknown.

pub mod commands;
pub mod spec;
pub mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{run, Outcome};
pub use spec::AlgebraSpec;

/// Environment variable overriding the evaluation budget.
pub const BUDGET_ENV: &str = "MEDLAT_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "medlat",
    version,
    about = "Finite Brouwer algebras, free distributive lattices and intermediate logics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for valuation search (1 = sequential).
    #[arg(long, global = true, default_value_t = 1)]
    pub parallel: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide validity of a formula in one algebra.
    Check {
        formula: String,
        #[arg(long, short)]
        algebra: AlgebraSpec,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Search B(P) over all posets P up to a size for a refutation.
    Countermodel {
        formula: String,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        /// Print the poset as DOT only, without the valuation.
        #[arg(long)]
        dot: bool,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Named-axiom table and structural summary of an algebra.
    Report {
        #[arg(long, short)]
        algebra: AlgebraSpec,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Run a property suite: iso, arrow, factor, hom, kp, free or all.
    Verify {
        suite: String,
        /// Largest poset for the factor and kp sweeps.
        #[arg(long, default_value_t = 4)]
        max_poset: usize,
        /// Largest free level for iso, arrow and free (at most 4).
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long)]
        json: bool,
    },
    /// List posets of a given size up to isomorphism, or their algebras.
    Enumerate {
        #[arg(value_enum)]
        what: EnumerateKind,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        json: bool,
    },
    /// Write an algebra as JSON tables or a DOT Hasse diagram.
    Export {
        #[arg(long, short)]
        algebra: AlgebraSpec,
        #[arg(long, required_unless_present = "dot", conflicts_with = "dot")]
        json: bool,
        #[arg(long)]
        dot: bool,
        /// Write to this file instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumerateKind {
    Posets,
    Algebras,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Designate {
    #[default]
    Bottom,
    Top,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// Designated value; `top` exists for comparison only.
    #[arg(long, value_enum, default_value_t = Designate::Bottom)]
    pub designate: Designate,
    /// Random valuations to try when exhaustive checking exceeds the budget.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
