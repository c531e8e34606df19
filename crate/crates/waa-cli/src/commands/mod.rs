//! Subcommand implementations and their shared plumbing.

pub mod compare;
pub mod landscape;
pub mod sample;
pub mod solve;
pub mod solve1d;

use std::fmt;
use std::path::Path;

use waa::data::DataError;
use waa::geometry::Point2;
use waa::oned::OnedError;
use waa::shape_opt::ShapeError;

/// Command failures, split by exit code: usage and input problems exit
/// with 2, numerical degeneracies with 3.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Degenerate(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Degenerate(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Degenerate(msg) => f.write_str(msg),
        }
    }
}

impl From<DataError> for CliError {
    fn from(err: DataError) -> Self {
        match err {
            DataError::RankError => CliError::Degenerate(err.to_string()),
            _ => CliError::Usage(err.to_string()),
        }
    }
}

impl From<OnedError> for CliError {
    fn from(err: OnedError) -> Self {
        match err {
            OnedError::DegenerateMeasure => CliError::Degenerate(err.to_string()),
            _ => CliError::Usage(err.to_string()),
        }
    }
}

impl From<ShapeError> for CliError {
    fn from(err: ShapeError) -> Self {
        match err {
            ShapeError::InvalidConfig(_) => CliError::Usage(err.to_string()),
            _ => CliError::Degenerate(err.to_string()),
        }
    }
}

// ---------------------------------------------------------------------------
// Flag parsing helpers
// ---------------------------------------------------------------------------

/// Parses `start:stop:count` into `count` evenly spaced values, inclusive
/// of both endpoints.
pub fn parse_range_spec(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("range {spec:?} must be start:stop:count"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if !start.is_finite() || !stop.is_finite() || count == 0 || stop < start {
        return Err(CliError::Usage(format!(
            "range {spec:?} needs finite start <= stop and a positive count"
        )));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

/// Parses `7` or an inclusive span `3..8` into a list of sizes.
pub fn parse_k_spec(spec: &str) -> Result<Vec<usize>, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "--k must be a count or a span like 3..8, got {spec:?}"
        ))
    };
    if let Some((a, b)) = spec.split_once("..") {
        let lo: usize = a.trim().parse().map_err(|_| bad())?;
        let hi: usize = b.trim().parse().map_err(|_| bad())?;
        if lo < 3 || hi < lo {
            return Err(bad());
        }
        Ok((lo..=hi).collect())
    } else {
        let k: usize = spec.trim().parse().map_err(|_| bad())?;
        Ok(vec![k])
    }
}

/// Parses a comma-separated list of floats, e.g. `0,5,10,20,50`.
pub fn parse_float_list(spec: &str) -> Result<Vec<f64>, CliError> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("not a number in list: {s:?}")))
        })
        .collect()
}

/// Parses a `15x15` grid shape.
pub fn parse_bin_spec(spec: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("--bin must look like 15x15, got {spec:?}"));
    let (a, b) = spec.split_once(['x', 'X']).ok_or_else(bad)?;
    let nx: usize = a.trim().parse().map_err(|_| bad())?;
    let ny: usize = b.trim().parse().map_err(|_| bad())?;
    if nx == 0 || ny == 0 {
        return Err(bad());
    }
    Ok((nx, ny))
}

/// Parses an `x,y` pair.
pub fn parse_point(spec: &str) -> Result<Point2, CliError> {
    let vals = parse_float_list(spec)?;
    if vals.len() != 2 {
        return Err(CliError::Usage(format!("expected x,y — got {spec:?}")));
    }
    Ok(Point2::new(vals[0], vals[1]))
}

/// Parses a row-major 2x2 matrix `a,b,c,d`.
pub fn parse_cov(spec: &str) -> Result<[[f64; 2]; 2], CliError> {
    let vals = parse_float_list(spec)?;
    if vals.len() != 4 {
        return Err(CliError::Usage(format!("expected a,b,c,d — got {spec:?}")));
    }
    Ok([[vals[0], vals[1]], [vals[2], vals[3]]])
}

// ---------------------------------------------------------------------------
// Small shared computations and writers
// ---------------------------------------------------------------------------

/// Largest distance from the polygon's centroid to a vertex.
pub fn circumradius(vertices: &[Point2]) -> f64 {
    let n = vertices.len() as f64;
    let cx = vertices.iter().map(|p| p.x).sum::<f64>() / n;
    let cy = vertices.iter().map(|p| p.y).sum::<f64>() / n;
    vertices
        .iter()
        .map(|p| (p.x - cx).hypot(p.y - cy))
        .fold(0.0, f64::max)
}

/// Edge lengths in vertex order.
pub fn side_lengths(vertices: &[Point2]) -> Vec<f64> {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            (b.x - a.x).hypot(b.y - a.y)
        })
        .collect()
}

pub fn create_out_dir(path: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(path)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

/// JSON artifacts carry a top-level schema marker and end with a newline.
pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut body = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Usage(format!("cannot encode {}: {e}", path.display())))?;
    body.push('\n');
    write_file(path, &body)
}
