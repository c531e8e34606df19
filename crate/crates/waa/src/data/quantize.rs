//! Turning geometry into atoms: histogram binning of point clouds and
//! grid quantization of uniform polygon densities.

use crate::geometry::{ConvexPolygon, HalfPlane, Point2};
use crate::ot::DiscreteMeasure;

use super::DataError;

/// A rectangular histogram grid. Bounds are derived from the data: each
/// axis spans exactly the sample minimum to the sample maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinningSpec {
    pub grid_nx: usize,
    pub grid_ny: usize,
}

impl BinningSpec {
    pub fn new(grid_nx: usize, grid_ny: usize) -> Result<Self, DataError> {
        if grid_nx == 0 || grid_ny == 0 {
            return Err(DataError::InvalidBinning(format!(
                "grid must have at least one cell per axis, got {grid_nx}x{grid_ny}"
            )));
        }
        Ok(Self { grid_nx, grid_ny })
    }
}

fn cell_index(v: f64, lo: f64, width: f64, n: usize) -> usize {
    if width <= 0.0 {
        return 0;
    }
    // The maximum itself lands exactly on the far edge; fold it into the
    // last cell rather than inventing an (n+1)-th one.
    (((v - lo) / width * n as f64) as usize).min(n - 1)
}

/// Bins a point cloud on a `grid_nx x grid_ny` histogram over its bounding
/// box and returns one atom per non-empty cell, placed at the cell center
/// and weighted by the fraction of points that fell there.
///
/// The atom count is bounded by `grid_nx * grid_ny` regardless of the
/// sample size, and the weighted mean of the atoms stays within one cell
/// diagonal of the sample mean (each point moves at most half a diagonal).
pub fn bin_to_measure(points: &[Point2], spec: &BinningSpec) -> Result<DiscreteMeasure, DataError> {
    if points.is_empty() {
        return Err(DataError::Empty("no points to bin"));
    }
    if let Some(i) = points
        .iter()
        .position(|p| !p.x.is_finite() || !p.y.is_finite())
    {
        return Err(DataError::NonFinite { row: i });
    }
    let (nx, ny) = (spec.grid_nx, spec.grid_ny);
    let mut x_lo = f64::INFINITY;
    let mut x_hi = f64::NEG_INFINITY;
    let mut y_lo = f64::INFINITY;
    let mut y_hi = f64::NEG_INFINITY;
    for p in points {
        x_lo = x_lo.min(p.x);
        x_hi = x_hi.max(p.x);
        y_lo = y_lo.min(p.y);
        y_hi = y_hi.max(p.y);
    }
    let (w, h) = (x_hi - x_lo, y_hi - y_lo);

    let mut counts = vec![0u64; nx * ny];
    for p in points {
        let ix = cell_index(p.x, x_lo, w, nx);
        let iy = cell_index(p.y, y_lo, h, ny);
        counts[iy * nx + ix] += 1;
    }

    let n = points.len() as f64;
    let mut atoms = Vec::new();
    let mut masses = Vec::new();
    for iy in 0..ny {
        for ix in 0..nx {
            let c = counts[iy * nx + ix];
            if c == 0 {
                continue;
            }
            let cx = x_lo + (ix as f64 + 0.5) / nx as f64 * w;
            let cy = y_lo + (iy as f64 + 0.5) / ny as f64 * h;
            atoms.push(Point2::new(cx, cy));
            masses.push(c as f64 / n);
        }
    }
    Ok(DiscreteMeasure::new(&atoms, &masses)?)
}

/// Quantizes the uniform density on a polygon using an `nx x ny` grid over
/// its bounding box: each cell that meets the polygon contributes one atom
/// at the centroid of the overlap, weighted by the overlap's share of the
/// total area.
pub fn quantize_polygon_grid(
    omega: &ConvexPolygon,
    nx: usize,
    ny: usize,
) -> Result<DiscreteMeasure, DataError> {
    if nx == 0 || ny == 0 {
        return Err(DataError::InvalidBinning(format!(
            "grid must have at least one cell per axis, got {nx}x{ny}"
        )));
    }
    let (lo, hi) = omega.bbox();
    let dx = (hi.x - lo.x) / nx as f64;
    let dy = (hi.y - lo.y) / ny as f64;
    let total = omega.area();

    let mut atoms = Vec::new();
    let mut masses = Vec::new();
    for iy in 0..ny {
        for ix in 0..nx {
            let x0 = lo.x + ix as f64 * dx;
            let y0 = lo.y + iy as f64 * dy;
            let piece = omega
                .clip(&HalfPlane::new(Point2::new(-1.0, 0.0), -x0).unwrap())
                .and_then(|p| p.clip(&HalfPlane::new(Point2::new(1.0, 0.0), x0 + dx).unwrap()))
                .and_then(|p| p.clip(&HalfPlane::new(Point2::new(0.0, -1.0), -y0).unwrap()))
                .and_then(|p| p.clip(&HalfPlane::new(Point2::new(0.0, 1.0), y0 + dy).unwrap()));
            if let Some(piece) = piece {
                let a = piece.area();
                if a > total * 1e-12 {
                    atoms.push(piece.centroid());
                    masses.push(a / total);
                }
            }
        }
    }
    // Clipping leaves tiny area roundoff behind; rescale so the masses sum
    // to one exactly.
    let sum: f64 = masses.iter().sum();
    for m in &mut masses {
        *m /= sum;
    }
    Ok(DiscreteMeasure::new(&atoms, &masses)?)
}

/// Quantizes the uniform density on a polygon into approximately
/// `n_atoms` atoms by choosing a square grid pitch of `sqrt(area / n)`.
/// Cells straddling the boundary add a fringe, so the actual count can
/// exceed the target slightly.
pub fn quantize_polygon(
    omega: &ConvexPolygon,
    n_atoms: usize,
) -> Result<DiscreteMeasure, DataError> {
    if n_atoms == 0 {
        return Err(DataError::InvalidBinning(
            "cannot quantize to zero atoms".into(),
        ));
    }
    let (lo, hi) = omega.bbox();
    let pitch = (omega.area() / n_atoms as f64).sqrt();
    let nx = ((hi.x - lo.x) / pitch).ceil().max(1.0) as usize;
    let ny = ((hi.y - lo.y) / pitch).ceil().max(1.0) as usize;
    quantize_polygon_grid(omega, nx, ny)
}
