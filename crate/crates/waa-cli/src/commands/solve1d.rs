//! `waa solve1d`: closed-form interval fit for a one-dimensional sample
//! column. Prints the result as JSON and writes `solution.json` plus a
//! manifest to the output directory.

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use serde_json::json;

use waa::data::read_column_csv;
use waa::oned::{solve_1d, Empirical1D};

use crate::manifest::{RunManifest, SCHEMA};

use super::{create_out_dir, write_json, CliError};

#[derive(Args, Serialize)]
pub struct Solve1dArgs {
    /// Input CSV with one numeric column
    #[arg(long)]
    pub input: PathBuf,
    /// Directory for solution.json and manifest.json
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Record wall-clock time in the manifest (off keeps reruns identical)
    #[arg(long, default_value_t = false)]
    pub emit_timing: bool,
}

pub fn run(args: &Solve1dArgs) -> Result<(), CliError> {
    let samples = read_column_csv(&args.input)?;
    let mu = Empirical1D::from_samples(&samples)?;
    let solution = solve_1d(&mu)?;

    let mut manifest = RunManifest::new("solve1d", args)?;
    manifest.record_input(&args.input)?;
    create_out_dir(&args.out_dir)?;

    let doc = json!({
        "schema": SCHEMA,
        "a": solution.interval.a(),
        "b": solution.interval.b(),
        "w2": solution.w2,
    });
    let path = args.out_dir.join("solution.json");
    write_json(&path, &doc)?;
    manifest.record_output(&path);
    manifest.finish(&args.out_dir, args.emit_timing)?;

    println!("{doc}");
    Ok(())
}
