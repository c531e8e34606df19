//! `waa solve`: fit a convex k-gon to a planar measure.
//!
//! `--k` accepts a single count or a span (`3..8`), and `--epsilon` a
//! comma-separated list; sweeping either writes one output directory per
//! run plus a summary CSV (`radius_vs_k.csv` or `ratio_vs_eps.csv`) at the
//! top level. Only one axis may sweep per invocation.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;
use serde_json::json;

use waa::data::read_measure_csv;
use waa::geometry::Point2;
use waa::ot::DiscreteMeasure;
use waa::shape_opt::{initialize_polygon, solve, SolveTrace, SolverConfig};

use crate::manifest::{RunManifest, SCHEMA};
use crate::plot::{bounds, Plot};

use super::{
    circumradius, create_out_dir, parse_float_list, parse_k_spec, side_lengths, write_file,
    write_json, CliError,
};

#[derive(Args, Serialize)]
pub struct SolveArgs {
    /// Input point cloud or measure, CSV rows of x,y[,mass]
    #[arg(long)]
    pub input: PathBuf,
    /// Number of polygon vertices; a span like 3..8 sweeps
    #[arg(long, default_value = "3")]
    pub k: String,
    /// Area-penalty strength; a comma list like 0,5,10 sweeps
    #[arg(long, default_value = "0")]
    pub epsilon: String,
    /// Area-penalty exponent
    #[arg(long, default_value_t = 2.0)]
    pub m: f64,
    /// Dual-ascent step size
    #[arg(long, default_value_t = 0.5)]
    pub tau1: f64,
    /// Vertex-descent step size
    #[arg(long, default_value_t = 0.1)]
    pub tau2: f64,
    /// Dual-ascent stopping threshold
    #[arg(long, default_value_t = 1e-3)]
    pub delta1: f64,
    /// Vertex-displacement stopping threshold
    #[arg(long, default_value_t = 1e-5)]
    pub delta2: f64,
    /// Seed for the initial polygon orientation
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory for trace.json, polygon.csv, figure.svg, manifest.json
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Record wall-clock time in the manifest (off keeps reruns identical)
    #[arg(long, default_value_t = false)]
    pub emit_timing: bool,
}

enum Sweep {
    None,
    OverK,
    OverEpsilon,
}

pub fn run(args: &SolveArgs) -> Result<(), CliError> {
    let ks = parse_k_spec(&args.k)?;
    let epsilons = parse_float_list(&args.epsilon)?;
    let sweep = match (ks.len(), epsilons.len()) {
        (1, 1) => Sweep::None,
        (_, 1) => Sweep::OverK,
        (1, _) => Sweep::OverEpsilon,
        _ => {
            return Err(CliError::Usage(
                "sweep either --k or --epsilon, not both at once".into(),
            ))
        }
    };

    // Parse and validate everything before writing a single byte.
    let mu = read_measure_csv(&args.input)?;
    let mut runs = Vec::new();
    for &k in &ks {
        for &epsilon in &epsilons {
            let cfg = SolverConfig {
                k,
                epsilon,
                m_exponent: args.m,
                tau1: args.tau1,
                tau2: args.tau2,
                delta1: args.delta1,
                delta2: args.delta2,
                seed: args.seed,
                ..SolverConfig::default()
            };
            cfg.validate()?;
            let subdir = match sweep {
                Sweep::None => None,
                Sweep::OverK => Some(format!("k{k}")),
                Sweep::OverEpsilon => Some(format!("eps{epsilon}")),
            };
            runs.push((cfg, subdir));
        }
    }

    let mut manifest = RunManifest::new("solve", args)?;
    manifest.record_input(&args.input)?;
    manifest.set_seed(args.seed);
    create_out_dir(&args.out_dir)?;

    let mut summary: Vec<(f64, SolveTrace)> = Vec::new();
    for (cfg, subdir) in runs {
        let dir = match &subdir {
            Some(name) => args.out_dir.join(name),
            None => args.out_dir.clone(),
        };
        create_out_dir(&dir)?;
        let omega0 = initialize_polygon(&mu, cfg.k, cfg.seed);
        let trace = solve(&mu, &omega0, &cfg)?;
        write_run_outputs(&dir, &mu, &trace, &mut manifest)?;
        let axis = match sweep {
            Sweep::OverEpsilon => cfg.epsilon,
            _ => cfg.k as f64,
        };
        summary.push((axis, trace));
    }

    match sweep {
        Sweep::None => {}
        Sweep::OverK => {
            let mut csv = String::from("k,circumradius\n");
            for (k, trace) in &summary {
                let r = circumradius(&trace.final_polygon);
                csv.push_str(&format!("{k},{r}\n"));
            }
            let path = args.out_dir.join("radius_vs_k.csv");
            write_file(&path, &csv)?;
            manifest.record_output(&path);
        }
        Sweep::OverEpsilon => {
            let mut csv = String::from("epsilon,area,side_ratio\n");
            for (eps, trace) in &summary {
                let omega = trace.final_region()?;
                let sides = side_lengths(&trace.final_polygon);
                let ratio = sides.iter().fold(0.0f64, |a, &b| a.max(b))
                    / sides.iter().fold(f64::INFINITY, |a, &b| a.min(b));
                csv.push_str(&format!("{eps},{},{ratio}\n", omega.area()));
            }
            let path = args.out_dir.join("ratio_vs_eps.csv");
            write_file(&path, &csv)?;
            manifest.record_output(&path);
        }
    }

    manifest.finish(&args.out_dir, args.emit_timing)?;
    Ok(())
}

fn write_run_outputs(
    dir: &Path,
    mu: &DiscreteMeasure,
    trace: &SolveTrace,
    manifest: &mut RunManifest,
) -> Result<(), CliError> {
    let trace_path = dir.join("trace.json");
    write_json(&trace_path, &json!({ "schema": SCHEMA, "trace": trace }))?;
    manifest.record_output(&trace_path);

    let mut csv = String::from("x,y\n");
    for v in &trace.final_polygon {
        csv.push_str(&format!("{},{}\n", v.x, v.y));
    }
    let poly_path = dir.join("polygon.csv");
    write_file(&poly_path, &csv)?;
    manifest.record_output(&poly_path);

    let figure_path = dir.join("figure.svg");
    write_file(&figure_path, &render_figure(mu, trace))?;
    manifest.record_output(&figure_path);
    Ok(())
}

/// Data atoms sized by mass, the trajectory of each vertex across outer
/// iterations, and the final polygon.
fn render_figure(mu: &DiscreteMeasure, trace: &SolveTrace) -> String {
    let all = mu.points().iter().copied().chain(
        trace
            .records
            .iter()
            .flat_map(|r| r.vertices.iter().copied()),
    );
    let (lo, hi) = bounds(all);
    let mut plot = Plot::new(lo, hi);

    for (p, m) in mu.points().iter().zip(mu.masses()) {
        plot.circle(*p, 2.0 + 14.0 * m.sqrt(), "#4a78b0", 0.65);
    }
    let k = trace.final_polygon.len();
    for v in 0..k {
        let path: Vec<Point2> = trace.records.iter().map(|r| r.vertices[v]).collect();
        plot.polyline(&path, "#9aa7b8", 1.0);
    }
    plot.polygon(&trace.final_polygon, "#d03232", 2.0);
    for v in &trace.final_polygon {
        plot.circle(*v, 3.5, "#d03232", 1.0);
    }
    plot.finish()
}
