//! `hdcat`: build, check, truncate and verify finite simplicial sets,
//! categories and operads.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 when a
//! search budget or certification bound made the run inconclusive, 3 for
//! input errors.

mod commands;
mod input;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use hdcat::solver::DEFAULT_BUDGET;

use crate::input::InputError;

#[derive(Parser, Debug)]
#[command(name = "hdcat", version, about = "Homotopy truncations of finite quasi-categories and operads")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub params: Params,
}

#[derive(Args, Debug, Clone)]
pub struct Params {
    /// Truncation level.
    #[arg(long, global = true, default_value_t = 1, allow_negative_numbers = true)]
    pub d: isize,
    /// Dimension cap for materialized simplices and certification.
    #[arg(long, global = true)]
    pub dim_cap: Option<usize>,
    /// Node budget for each backtracking search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Arity cap for Fin_*.
    #[arg(long, global = true, default_value_t = 2)]
    pub arity_cap: usize,
    /// Output format for constructed objects.
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Params {
    pub fn cap(&self, default: usize) -> usize {
        self.dim_cap.unwrap_or(default)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ssx,
    Cat,
    Opd,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a named construction.
    Build {
        #[command(subcommand)]
        what: BuildKind,
    },
    /// Check a predicate.
    #[command(group(ArgGroup::new("kind").required(true)))]
    Check {
        /// Inner horn filling through the dimension cap.
        #[arg(long, group = "kind")]
        quasicat: bool,
        /// The d-category predicate.
        #[arg(long, group = "kind", value_name = "D", allow_negative_numbers = true)]
        d_category: Option<isize>,
        /// The projection of a product onto its first factor is an inner fibration.
        #[arg(long, group = "kind")]
        inner_fib: bool,
        /// coCartesian edges of the projection N(C × D) → N(C).
        #[arg(long, group = "kind")]
        cocart: bool,
        /// The d-operad predicate.
        #[arg(long, group = "kind", value_name = "D", allow_negative_numbers = true)]
        d_operad: Option<isize>,
        /// Restrict `--cocart` to one edge, by name.
        #[arg(long)]
        edge: Option<String>,
        inputs: Vec<PathBuf>,
    },
    /// Compute h_d of a category, simplicial set or operad.
    Truncate { input: PathBuf },
    /// Mapping spaces.
    #[command(group(ArgGroup::new("kind").required(true)))]
    Homspace {
        #[arg(long, group = "kind")]
        right: bool,
        #[arg(long, group = "kind")]
        middle: bool,
        /// Multi-mapping space of an operad.
        #[arg(long, group = "kind")]
        mul: bool,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        /// Input colors for `--mul`, comma separated.
        #[arg(long, value_delimiter = ',')]
        inputs: Vec<String>,
        /// Output color for `--mul`.
        #[arg(long)]
        output: Option<String>,
        input: PathBuf,
    },
    /// Run a verification.
    #[command(group(ArgGroup::new("kind").required(true)))]
    Verify {
        #[arg(long, group = "kind")]
        alpha: bool,
        /// Compare with another file up to isomorphism (over Fin_* for operads).
        #[arg(long, group = "kind", value_name = "FILE")]
        iso: Option<PathBuf>,
        #[arg(long, group = "kind")]
        cylinder_lemma: bool,
        #[arg(long, group = "kind")]
        homrel_equivalences: bool,
        /// Precomposition along θ_d into the given target.
        #[arg(long, group = "kind", value_name = "TARGET")]
        universal_property: Option<PathBuf>,
        #[arg(long, group = "kind")]
        operad_suite: bool,
        /// Algebras in the given target operad.
        #[arg(long, group = "kind", value_name = "TARGET")]
        alg_d_category: Option<PathBuf>,
        /// The full built-in suite.
        #[arg(long, group = "kind")]
        suite: bool,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        /// Generators of the subcomplex A for `--cylinder-lemma`.
        #[arg(long, value_delimiter = ',')]
        sub: Vec<String>,
        inputs: Vec<PathBuf>,
    },
    /// Aggregate report files.
    Report { inputs: Vec<PathBuf> },
}

#[derive(Subcommand, Debug)]
pub enum BuildKind {
    /// Δⁿ.
    Delta { n: usize },
    /// ∂Δⁿ.
    Boundary { n: usize },
    /// Λⁿᵢ.
    Horn { n: usize, i: usize },
    /// The nerve of a category, through the dimension cap.
    Nerve { input: PathBuf },
    /// A × B through the dimension cap.
    Product { left: PathBuf, right: PathBuf },
    /// B/A for the subcomplex A generated by `--sub`.
    Pushout {
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        sub: Vec<String>,
    },
    /// B ⋊_A D for the subcomplex A of B generated by `--sub`.
    Cylinder {
        input: PathBuf,
        d: PathBuf,
        #[arg(long, value_delimiter = ',')]
        sub: Vec<String>,
    },
    /// J(K).
    J { input: PathBuf },
    /// Σ(K).
    Sigma { input: PathBuf },
    /// A named category: bz2, iso-groupoid, square, or ordinal-N.
    Category { name: String },
    /// A named operad: comm, ass or triv.
    Operad { name: String },
}

fn exit_status(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<InputError>().is_some() {
        return 3;
    }
    match e.downcast_ref::<hdcat::Error>() {
        Some(err) if err.is_inconclusive() => 2,
        Some(hdcat::Error::Validation(_)) => 1,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("hdcat: {e:#}");
            ExitCode::from(exit_status(&e))
        }
    }
}
