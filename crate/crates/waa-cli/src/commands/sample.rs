//! `waa sample`: generate synthetic point clouds, either raw
//! (`samples.csv`) or binned into a measure (`measure.csv`).

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use waa::data::{bin_to_measure, sample_gaussian, sample_uniform_disk, BinningSpec};

use crate::manifest::RunManifest;

use super::{create_out_dir, parse_bin_spec, parse_cov, parse_point, write_file, CliError};

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Distribution {
    /// Uniform on the unit disk
    Disk,
    /// Bivariate normal with --mean and --cov
    Gaussian,
}

#[derive(Args, Serialize)]
pub struct SampleArgs {
    /// Source distribution
    #[arg(long, value_enum)]
    pub dist: Distribution,
    /// Number of samples
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    /// Gaussian mean as x,y
    #[arg(long, default_value = "0,0")]
    pub mean: String,
    /// Gaussian covariance, row-major a,b,c,d
    #[arg(long, default_value = "1,0,0,1")]
    pub cov: String,
    /// Bin the samples on a grid (e.g. 15x15) and write a measure instead
    #[arg(long)]
    pub bin: Option<String>,
    /// Seed for the sample stream
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory for the CSV and manifest.json
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Record wall-clock time in the manifest (off keeps reruns identical)
    #[arg(long, default_value_t = false)]
    pub emit_timing: bool,
}

pub fn run(args: &SampleArgs) -> Result<(), CliError> {
    if args.n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let bin = args.bin.as_deref().map(parse_bin_spec).transpose()?;
    let points = match args.dist {
        Distribution::Disk => sample_uniform_disk(args.n, args.seed),
        Distribution::Gaussian => {
            let mean = parse_point(&args.mean)?;
            let cov = parse_cov(&args.cov)?;
            sample_gaussian(args.n, mean, cov, args.seed)?
        }
    };

    let mut manifest = RunManifest::new("sample", args)?;
    manifest.set_seed(args.seed);
    create_out_dir(&args.out_dir)?;

    let path = match bin {
        Some((nx, ny)) => {
            let spec = BinningSpec::new(nx, ny)?;
            let mu = bin_to_measure(&points, &spec)?;
            let mut csv = String::from("x,y,mass\n");
            for (p, m) in mu.points().iter().zip(mu.masses()) {
                csv.push_str(&format!("{},{},{}\n", p.x, p.y, m));
            }
            let path = args.out_dir.join("measure.csv");
            write_file(&path, &csv)?;
            path
        }
        None => {
            let mut csv = String::from("x,y\n");
            for p in &points {
                csv.push_str(&format!("{},{}\n", p.x, p.y));
            }
            let path = args.out_dir.join("samples.csv");
            write_file(&path, &csv)?;
            path
        }
    };
    manifest.record_output(&path);
    manifest.finish(&args.out_dir, args.emit_timing)?;
    Ok(())
}
