//! Dimensionality reduction and clustering baselines: PCA via singular
//! value decomposition, k-means with careful seeding, and a centered
//! moving average for smoothing raw series.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::Point2;

use super::{DataError, RawDataset};

/// Projects the rows of `data` onto their top `n_components` principal
/// directions.
///
/// Columns are centered first (so a constant offset added to every row has
/// no effect) and the SVD of the centered matrix is taken directly — the
/// covariance matrix is never formed, which keeps the computation stable
/// for wide data. Returns the projected rows together with the fraction of
/// total variance captured by each retained component; the fractions are
/// non-increasing and sum to at most one.
pub fn pca_reduce(
    data: &RawDataset,
    n_components: usize,
) -> Result<(Vec<Vec<f64>>, Vec<f64>), DataError> {
    let (n, d) = (data.n_rows(), data.n_cols());
    let max = n.min(d);
    if n_components == 0 || n_components > max {
        return Err(DataError::TooManyComponents {
            requested: n_components,
            max,
        });
    }

    let mut centered = DMatrix::from_fn(n, d, |i, j| data.rows[i][j]);
    for j in 0..d {
        let mean = centered.column(j).sum() / n as f64;
        for i in 0..n {
            centered[(i, j)] -= mean;
        }
    }

    let svd = centered.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested right-singular vectors");

    // Order components by singular value; the decomposition itself does not
    // promise any particular order.
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .expect("singular values are finite")
    });

    let total_var: f64 = svd.singular_values.iter().map(|s| s * s).sum();
    if total_var <= 1e-24 {
        return Err(DataError::RankError);
    }

    let mut scores = vec![vec![0.0; n_components]; n];
    let mut ratios = Vec::with_capacity(n_components);
    for (c, &idx) in order.iter().take(n_components).enumerate() {
        let sigma = svd.singular_values[idx];
        ratios.push(sigma * sigma / total_var);
        let mut axis: Vec<f64> = v_t.row(idx).iter().copied().collect();
        // Fix the sign so the largest-magnitude loading is positive; the
        // SVD leaves each singular vector's sign arbitrary.
        let lead = axis
            .iter()
            .copied()
            .max_by(|a, b| a.abs().partial_cmp(&b.abs()).expect("finite loadings"))
            .unwrap_or(1.0);
        if lead < 0.0 {
            for a in &mut axis {
                *a = -*a;
            }
        }
        for i in 0..n {
            scores[i][c] = (0..d).map(|j| centered[(i, j)] * axis[j]).sum();
        }
    }
    Ok((scores, ratios))
}

const KMEANS_TOL: f64 = 1e-8;
const KMEANS_MAX_ITERS: usize = 500;

/// Lloyd's algorithm with distance-weighted seeding. Iterates until no
/// center moves more than `1e-8` or 500 rounds elapse, whichever comes
/// first; a cluster that empties out is re-seeded with the point furthest
/// from its assigned center.
pub fn kmeans(points: &[Point2], k: usize, seed: u64) -> Result<Vec<Point2>, DataError> {
    let n = points.len();
    if k == 0 || k > n {
        return Err(DataError::BadClusterCount { k, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Seeding: first center uniform, the rest sampled proportionally to
    // squared distance from the nearest center chosen so far.
    let mut centers: Vec<Point2> = vec![points[rng.random_range(0..n)]];
    let mut d2: Vec<f64> = points.iter().map(|p| dist2(*p, centers[0])).collect();
    while centers.len() < k {
        let total: f64 = d2.iter().sum();
        let next = if total > 0.0 {
            let mut t = rng.random_range(0.0..total);
            let mut pick = n - 1;
            for (i, &w) in d2.iter().enumerate() {
                if t < w {
                    pick = i;
                    break;
                }
                t -= w;
            }
            pick
        } else {
            rng.random_range(0..n)
        };
        centers.push(points[next]);
        for (i, p) in points.iter().enumerate() {
            d2[i] = d2[i].min(dist2(*p, points[next]));
        }
    }

    let mut assignment = vec![0usize; n];
    for _ in 0..KMEANS_MAX_ITERS {
        for (i, p) in points.iter().enumerate() {
            assignment[i] = nearest_center(*p, &centers);
        }
        let mut sums = vec![Point2::new(0.0, 0.0); k];
        let mut counts = vec![0usize; k];
        for (i, p) in points.iter().enumerate() {
            let c = assignment[i];
            sums[c].x += p.x;
            sums[c].y += p.y;
            counts[c] += 1;
        }
        let mut movement: f64 = 0.0;
        for c in 0..k {
            let new = if counts[c] > 0 {
                Point2::new(sums[c].x / counts[c] as f64, sums[c].y / counts[c] as f64)
            } else {
                // Re-seed an empty cluster with the worst-served point.
                let far = (0..n)
                    .max_by(|&a, &b| {
                        dist2(points[a], centers[assignment[a]])
                            .partial_cmp(&dist2(points[b], centers[assignment[b]]))
                            .expect("finite distances")
                    })
                    .expect("points is non-empty");
                points[far]
            };
            movement = movement.max(dist2(new, centers[c]).sqrt());
            centers[c] = new;
        }
        if movement < KMEANS_TOL {
            break;
        }
    }
    Ok(centers)
}

fn dist2(a: Point2, b: Point2) -> f64 {
    let (dx, dy) = (a.x - b.x, a.y - b.y);
    dx * dx + dy * dy
}

fn nearest_center(p: Point2, centers: &[Point2]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (c, center) in centers.iter().enumerate() {
        let d = dist2(p, *center);
        if d < best_d {
            best_d = d;
            best = c;
        }
    }
    best
}

/// Centered moving average. Interior samples average a full window
/// (`window` must be odd); near the boundary the window shrinks to
/// whatever indices exist, so the output has the same length as the
/// input and constant series pass through unchanged.
pub fn moving_average_centered(series: &[f64], window: usize) -> Vec<f64> {
    assert!(
        window >= 1 && window % 2 == 1,
        "window must be odd and positive"
    );
    let half = window / 2;
    let n = series.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let lo = i.saturating_sub(half);
        let hi = (i + half + 1).min(n);
        let sum: f64 = series[lo..hi].iter().sum();
        out.push(sum / (hi - lo) as f64);
    }
    out
}
