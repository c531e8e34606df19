//! `waa` — command-line driver for Wasserstein archetypal analysis.
//!
//! Subcommands reproduce the experiments end to end: `solve` fits a convex
//! polygon to a planar measure, `solve1d` runs the closed-form interval
//! fit, `landscape` maps the objective over a two-parameter triangle
//! family, `sample` generates synthetic point clouds, and `compare` runs
//! the full reduction pipeline against a k-means baseline.
//!
//! Every invocation writes a `manifest.json` recording the command, its
//! configuration, input digests, and output files. Reruns with the same
//! inputs and seed produce byte-identical outputs; wall-clock timing is
//! recorded only when `--emit-timing` is passed, precisely so that the
//! default artifacts stay reproducible.

mod commands;
mod manifest;
mod plot;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{compare, landscape, sample, solve, solve1d};

#[derive(Parser)]
#[command(
    name = "waa",
    version,
    about = "Summarize planar measures by uniform polygons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a convex k-gon to a planar measure read from CSV
    Solve(solve::SolveArgs),
    /// Fit an interval to a one-dimensional sample column, in closed form
    Solve1d(solve1d::Solve1dArgs),
    /// Tabulate the distance from a fixed measure over a triangle family
    Landscape(landscape::LandscapeArgs),
    /// Generate synthetic point clouds (optionally binned to a measure)
    Sample(sample::SampleArgs),
    /// Smooth, reduce, bin, and summarize labeled rows; overlay k-means
    Compare(compare::CompareArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => solve::run(&args),
        Command::Solve1d(args) => solve1d::run(&args),
        Command::Landscape(args) => landscape::run(&args),
        Command::Sample(args) => sample::run(&args),
        Command::Compare(args) => compare::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
