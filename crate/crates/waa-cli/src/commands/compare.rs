//! `waa compare`: the full reduction pipeline on labeled rows — centered
//! moving average, two-component PCA, grid binning — followed by a
//! polygon fit and a k-means baseline on the same atoms. Writes an
//! overlay figure and the fitted coordinates.

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use serde_json::json;

use waa::data::{
    bin_to_measure, kmeans, moving_average_centered, pca_reduce, read_rows_csv, BinningSpec,
    RawDataset,
};
use waa::geometry::Point2;
use waa::ot::DiscreteMeasure;
use waa::shape_opt::{initialize_polygon, solve, SolverConfig};

use crate::manifest::{RunManifest, SCHEMA};
use crate::plot::{bounds, Plot};

use super::{create_out_dir, parse_bin_spec, write_file, write_json, CliError};

#[derive(Args, Serialize)]
pub struct CompareArgs {
    /// Input CSV of labeled rows: label,v1,...,vD
    #[arg(long)]
    pub input: PathBuf,
    /// Number of polygon vertices and of k-means clusters
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Area-penalty strength for the polygon fit
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
    /// Centered moving-average window (odd)
    #[arg(long, default_value_t = 5)]
    pub window: usize,
    /// Binning grid for the reduced points
    #[arg(long, default_value = "15x15")]
    pub bin: String,
    /// Fail unless the two retained components explain at least this fraction
    #[arg(long, default_value_t = 0.0)]
    pub min_explained: f64,
    /// Seed for the polygon initialization and k-means
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory for compare.json, overlay.svg, manifest.json
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Record wall-clock time in the manifest (off keeps reruns identical)
    #[arg(long, default_value_t = false)]
    pub emit_timing: bool,
}

pub fn run(args: &CompareArgs) -> Result<(), CliError> {
    if args.window == 0 || args.window % 2 == 0 {
        return Err(CliError::Usage(format!(
            "--window must be odd, got {}",
            args.window
        )));
    }
    let (nx, ny) = parse_bin_spec(&args.bin)?;
    let data = read_rows_csv(&args.input)?;

    let smoothed: Vec<Vec<f64>> = data
        .rows
        .iter()
        .map(|row| moving_average_centered(row, args.window))
        .collect();
    let smoothed = RawDataset::new(data.labels.clone(), smoothed)?;

    let (scores, ratios) = pca_reduce(&smoothed, 2)?;
    let explained: f64 = ratios.iter().sum();
    if explained < args.min_explained {
        return Err(CliError::Degenerate(format!(
            "retained components explain {explained:.4}, below the required {}",
            args.min_explained
        )));
    }

    let points: Vec<Point2> = scores.iter().map(|s| Point2::new(s[0], s[1])).collect();
    let mu = bin_to_measure(&points, &BinningSpec::new(nx, ny)?)?;

    // Binned score clouds are lumpy — tightly clustered rows put most of
    // the mass in a few cells, and the resulting uneven Laguerre geometry
    // throws the inner ascent out of its stable region at the default
    // step. A conservative inner step keeps it convergent and costs only
    // a few hundred extra inner iterations at this problem size.
    let cfg = SolverConfig {
        k: args.k,
        epsilon: args.epsilon,
        seed: args.seed,
        tau1: 0.05,
        ..SolverConfig::default()
    };
    cfg.validate()?;
    let omega0 = initialize_polygon(&mu, args.k, args.seed);
    let trace = solve(&mu, &omega0, &cfg)?;
    let centers = kmeans(mu.points(), args.k, args.seed)?;

    let mut manifest = RunManifest::new("compare", args)?;
    manifest.record_input(&args.input)?;
    manifest.set_seed(args.seed);
    create_out_dir(&args.out_dir)?;

    let doc = json!({
        "schema": SCHEMA,
        "explained_variance_ratios": ratios,
        "archetype_vertices": trace.final_polygon,
        "kmeans_centers": centers,
    });
    let json_path = args.out_dir.join("compare.json");
    write_json(&json_path, &doc)?;
    manifest.record_output(&json_path);

    let svg_path = args.out_dir.join("overlay.svg");
    write_file(
        &svg_path,
        &render_overlay(&mu, &trace.final_polygon, &centers),
    )?;
    manifest.record_output(&svg_path);

    manifest.finish(&args.out_dir, args.emit_timing)?;
    Ok(())
}

/// Atoms sized by mass, the fitted polygon with red vertex markers, and
/// k-means centers as green squares.
fn render_overlay(mu: &DiscreteMeasure, polygon: &[Point2], centers: &[Point2]) -> String {
    let all = mu
        .points()
        .iter()
        .chain(polygon.iter())
        .chain(centers.iter())
        .copied();
    let (lo, hi) = bounds(all);
    let mut plot = Plot::new(lo, hi);

    for (p, m) in mu.points().iter().zip(mu.masses()) {
        plot.circle(*p, 2.0 + 14.0 * m.sqrt(), "#4a78b0", 0.65);
    }
    plot.polygon(polygon, "#d03232", 2.0);
    for v in polygon {
        plot.circle(*v, 4.0, "#d03232", 1.0);
    }
    for c in centers {
        plot.square(*c, 5.0, "#2a9d5c");
    }
    plot.finish()
}
