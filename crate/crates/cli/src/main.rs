//! `spp`: mine, render, prove and compare over profile-sequence files.
//!
//! Exit codes: 0 success, 1 a negative verdict (not derivable, mismatch,
//! violation, not equivalent), 2 parse or usage error, 3 I/O error,
//! 4 prover budget exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spp_core::diagram::{CoupleOp, Format};
use spp_core::logic::DEFAULT_BUDGET;
use spp_core::Mode;

#[derive(Parser, Debug)]
#[command(name = "spp", version, about = "Implicational invariants of symbolic profile sequences")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format for diagrams.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Ansi)]
    pub format: FormatArg,
    /// Atom truth: quanta stripped (plain) or exact signatures (full).
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Plain)]
    pub mode: ModeArg,
    /// Proof-search step budget.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Seed for generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Ansi,
    Html,
    Svg,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Ansi => Format::Ansi,
            FormatArg::Html => Format::Html,
            FormatArg::Svg => Format::Svg,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Plain,
    Full,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Plain => Mode::Plain,
            ModeArg::Full => Mode::Full,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    Join,
    Meet,
}

impl From<OpArg> for CoupleOp {
    fn from(o: OpArg) -> Self {
        match o {
            OpArg::Join => CoupleOp::Join,
            OpArg::Meet => CoupleOp::Meet,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// Every invariant.
    All,
    /// Non-vacuous invariants other than `A -> A`.
    NonVacuous,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mine a sequence file and render its implication diagram.
    Mine {
        input: PathBuf,
        /// Print the invariant-set JSON instead of the diagram.
        #[arg(long, value_enum, conflicts_with = "conjunctive")]
        invariants: Option<Which>,
        /// Print minimal conjunctive invariants up to this arity instead.
        #[arg(long, num_args = 0..=1, default_missing_value = "2")]
        conjunctive: Option<usize>,
    },
    /// Decide whether a formula follows from mined invariants or a formula file.
    Derive {
        formula: String,
        /// Sequence file whose mined invariants form the base.
        #[arg(long)]
        from: Option<PathBuf>,
        /// File with one base formula per line.
        #[arg(long)]
        axioms: Option<PathBuf>,
    },
    /// Superpose the diagrams of two sequences.
    Couple {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = OpArg::Join)]
        op: OpArg,
    },
    /// Polarities relative to a corpus manifest.
    Polarity {
        manifest: PathBuf,
        #[command(subcommand)]
        direction: Direction,
    },
    /// Kernel equivalence of two formula sets or two name selections.
    Kernel {
        manifest: PathBuf,
        #[command(subcommand)]
        what: KernelArgs,
    },
    /// Check transformations for preservation of a formula set on test families.
    CategoryCheck {
        manifest: PathBuf,
        /// Transformation JSON files.
        #[arg(required = true)]
        transformations: Vec<PathBuf>,
        /// Formula file; defaults to the theory of each test set.
        #[arg(long)]
        formulas: Option<PathBuf>,
        /// A test set as comma-separated corpus names; repeatable.
        #[arg(long = "test", required = true)]
        tests: Vec<String>,
    },
    /// Compare the miner with the brute-force oracle.
    Oracle {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Write pseudo-random sequence files.
    Gen {
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        length: usize,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum Direction {
    /// Names whose mined base derives every formula.
    Right {
        #[arg(required = true)]
        formulas: Vec<String>,
    },
    /// Ground base of the theory of the named sequences.
    Left { names: Vec<String> },
}

#[derive(Subcommand, Debug)]
pub enum KernelArgs {
    Formulas { a: PathBuf, b: PathBuf },
    /// Two selections as comma-separated names.
    Names { a: String, b: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("spp: {e}");
            ExitCode::from(e.code())
        }
    }
}
