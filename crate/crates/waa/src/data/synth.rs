//! Seeded synthetic data: disk and Gaussian samplers for the planar
//! pipeline, plus a generator of labeled rate curves with planted cluster
//! structure for exercising the comparison pipeline end to end.

use std::f64::consts::TAU;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::Point2;

use super::{DataError, RawDataset};

/// Draws `n` points uniformly from the unit disk. The radius is the
/// square root of a uniform variate, so area — not radius — is uniform.
pub fn sample_uniform_disk(n: usize, seed: u64) -> Vec<Point2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let r = rng.random_range(0.0..1.0f64).sqrt();
            let theta = TAU * rng.random_range(0.0..1.0f64);
            Point2::new(r * theta.cos(), r * theta.sin())
        })
        .collect()
}

/// Draws `n` points from the bivariate normal with the given mean and
/// covariance. Standard normals come from the Box–Muller transform and are
/// colored by the lower Cholesky factor of `cov`, which must be symmetric
/// positive definite.
pub fn sample_gaussian(
    n: usize,
    mean: Point2,
    cov: [[f64; 2]; 2],
    seed: u64,
) -> Result<Vec<Point2>, DataError> {
    let [[a, b], [c, d]] = cov;
    if !(a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite())
        || (b - c).abs() > 1e-12 * (1.0 + b.abs().max(c.abs()))
    {
        return Err(DataError::BadCovariance);
    }
    // Lower Cholesky factor: cov = L L^T.
    if a <= 0.0 {
        return Err(DataError::BadCovariance);
    }
    let l11 = a.sqrt();
    let l21 = b / l11;
    let rest = d - l21 * l21;
    if rest <= 0.0 {
        return Err(DataError::BadCovariance);
    }
    let l22 = rest.sqrt();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let u1: f64 = 1.0 - rng.random_range(0.0..1.0f64); // (0, 1]
        let u2: f64 = rng.random_range(0.0..1.0f64);
        let rho = (-2.0 * u1.ln()).sqrt();
        let z1 = rho * (TAU * u2).cos();
        let z2 = rho * (TAU * u2).sin();
        out.push(Point2::new(mean.x + l11 * z1, mean.y + l21 * z1 + l22 * z2));
    }
    Ok(out)
}

/// Generates a labeled table of smooth rate curves in `[0, 1]` with
/// `clusters` planted groups. Each group follows its own logistic-bump
/// profile; rows add small seeded jitter on top. Useful as a stand-in for
/// real reporting data when exercising the smoothing/reduction/clustering
/// pipeline.
pub fn synthetic_rates(
    n_rows: usize,
    n_days: usize,
    clusters: usize,
    seed: u64,
) -> Result<RawDataset, DataError> {
    if n_rows == 0 || n_days == 0 || clusters == 0 {
        return Err(DataError::Empty(
            "rows, days, and clusters must all be positive",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels = Vec::with_capacity(n_rows);
    let mut rows = Vec::with_capacity(n_rows);
    for i in 0..n_rows {
        let group = i % clusters;
        // Each group peaks at a different time with a different height.
        let peak_day = (group as f64 + 0.5) / clusters as f64;
        let height = 0.25 + 0.5 * group as f64 / clusters.max(2) as f64;
        let phase: f64 = rng.random_range(-0.03..0.03);
        let scale: f64 = rng.random_range(0.9..1.1);
        let mut row = Vec::with_capacity(n_days);
        for day in 0..n_days {
            let t = day as f64 / (n_days - 1).max(1) as f64;
            let bump = (-((t - peak_day - phase) / 0.18).powi(2)).exp();
            let noise: f64 = rng.random_range(-0.01..0.01);
            row.push((0.05 + scale * height * bump + noise).clamp(0.0, 1.0));
        }
        labels.push(format!("row{i:02}"));
        rows.push(row);
    }
    RawDataset::new(labels, rows)
}
