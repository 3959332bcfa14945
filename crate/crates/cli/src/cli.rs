//! Command-line flags.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "rmatrix", version, about = "Exact R matrices from braid-group representations")]
pub struct Cli {
    /// key=value file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute an R matrix or a BMW g1 matrix.
    Compute(Opts),
    /// Run verification suites.
    Verify(Opts),
    /// Evaluate an R matrix at numeric q, as CSV.
    Eval(Opts),
    /// Parse a scalar and print its canonical form or value.
    Scalar(Opts),
}

#[derive(Args, Debug, Default, Clone)]
pub struct Opts {
    /// Young shape: 1, 2, 11 or 21.
    #[arg(long)]
    pub shape: Option<String>,
    /// BMW series: B, C or D.
    #[arg(long)]
    pub series: Option<String>,
    /// Rank of the BMW series.
    #[arg(long)]
    pub rank: Option<u8>,
    /// Contraction weights: literal or alternative.
    #[arg(long)]
    pub weights: Option<String>,
    /// Alphabet size.
    #[arg(long)]
    pub n: Option<u8>,
    /// Evaluation point; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Vec<String>,
    /// Float tolerance.
    #[arg(long)]
    pub tol: Option<String>,
    /// json, csv or latex.
    #[arg(long)]
    pub format: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// hecke, quad22, quad41, ybe, intertwiner, golden, n-indep, bmw or all.
    #[arg(long)]
    pub suite: Option<String>,
    /// Scalar expression.
    pub expr: Option<String>,
}
