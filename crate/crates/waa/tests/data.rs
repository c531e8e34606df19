//! Data-pipeline tests: binning, samplers, PCA, k-means, smoothing, CSV
//! ingestion, and polygon quantization.

use std::io::Write as _;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use waa::data::{
    bin_to_measure, kmeans, moving_average_centered, pca_reduce, quantize_polygon,
    quantize_polygon_grid, read_column_csv, read_measure_csv, read_rows_csv, sample_gaussian,
    sample_uniform_disk, synthetic_rates, BinningSpec, DataError, RawDataset,
};
use waa::geometry::{ConvexPolygon, Point2};

fn pt(x: f64, y: f64) -> Point2 {
    Point2::new(x, y)
}

fn mean_of(points: &[Point2]) -> Point2 {
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(sx, sy), p| (sx + p.x, sy + p.y));
    pt(sx / n, sy / n)
}

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

#[test]
fn disk_sampler_is_uniform_on_the_unit_disk() {
    let pts = sample_uniform_disk(20_000, 7);
    assert_eq!(pts.len(), 20_000);
    assert!(pts.iter().all(|p| p.x * p.x + p.y * p.y <= 1.0 + 1e-12));

    let m = mean_of(&pts);
    assert!(
        m.x.abs() < 0.02 && m.y.abs() < 0.02,
        "mean {m:?} should be near the origin"
    );

    // Under the area-uniform law, r^2 is uniform on [0, 1]: half the mass
    // lies inside radius sqrt(1/2), and E[r^2] = 1/2.
    let inner = pts.iter().filter(|p| p.x * p.x + p.y * p.y <= 0.5).count() as f64 / 20_000.0;
    assert!(
        (inner - 0.5).abs() < 0.015,
        "mass within r=sqrt(1/2) was {inner}"
    );
    let mean_r2: f64 = pts.iter().map(|p| p.x * p.x + p.y * p.y).sum::<f64>() / 20_000.0;
    assert!((mean_r2 - 0.5).abs() < 0.01);
}

#[test]
fn samplers_are_deterministic_in_the_seed() {
    assert_eq!(sample_uniform_disk(50, 3), sample_uniform_disk(50, 3));
    assert_ne!(sample_uniform_disk(50, 3), sample_uniform_disk(50, 4));
    let g1 = sample_gaussian(50, pt(0.0, 0.0), [[1.0, 0.0], [0.0, 1.0]], 9).unwrap();
    let g2 = sample_gaussian(50, pt(0.0, 0.0), [[1.0, 0.0], [0.0, 1.0]], 9).unwrap();
    assert_eq!(g1, g2);
}

fn sample_cov(pts: &[Point2]) -> [[f64; 2]; 2] {
    let m = mean_of(pts);
    let nf = pts.len() as f64;
    let (mut cxx, mut cxy, mut cyy) = (0.0, 0.0, 0.0);
    for p in pts {
        let (dx, dy) = (p.x - m.x, p.y - m.y);
        cxx += dx * dx;
        cxy += dx * dy;
        cyy += dy * dy;
    }
    [[cxx / nf, cxy / nf], [cxy / nf, cyy / nf]]
}

#[test]
fn gaussian_sampler_matches_requested_moments() {
    let n = 50_000;
    let nf = n as f64;

    // At unit scale the entrywise consistency band 5/sqrt(n) is a wide
    // (>3.5 sigma) bound on every entry.
    let cov = [[1.0, 0.3], [0.3, 0.8]];
    let pts = sample_gaussian(n, pt(1.0, -2.0), cov, 11).unwrap();
    let m = mean_of(&pts);
    assert!((m.x - 1.0).abs() < 0.03 && (m.y + 2.0).abs() < 0.03);
    let got = sample_cov(&pts);
    for i in 0..2 {
        for j in 0..2 {
            assert!(
                (got[i][j] - cov[i][j]).abs() < 5.0 / nf.sqrt(),
                "cov[{i}][{j}] = {}",
                got[i][j]
            );
        }
    }

    // For anisotropic covariances the estimator noise scales with the
    // entries themselves, so compare correlation-normalized entries: the
    // same band then stays a >3.5 sigma bound at every scale.
    let cov = [[5.0, 0.0], [0.0, 1.0]];
    let pts = sample_gaussian(n, pt(0.0, 0.0), cov, 23).unwrap();
    let got = sample_cov(&pts);
    for i in 0..2 {
        for j in 0..2 {
            let scale = (cov[i][i] * cov[j][j]).sqrt();
            assert!(
                (got[i][j] - cov[i][j]).abs() / scale < 5.0 / nf.sqrt(),
                "cov[{i}][{j}] = {}",
                got[i][j]
            );
        }
    }
}

#[test]
fn gaussian_sampler_rejects_bad_covariances() {
    let id = pt(0.0, 0.0);
    for cov in [
        [[1.0, 0.5], [0.4, 1.0]],  // asymmetric
        [[0.0, 0.0], [0.0, 1.0]],  // singular
        [[-1.0, 0.0], [0.0, 1.0]], // negative variance
        [[1.0, 2.0], [2.0, 1.0]],  // indefinite
        [[f64::NAN, 0.0], [0.0, 1.0]],
    ] {
        assert!(matches!(
            sample_gaussian(10, id, cov, 0),
            Err(DataError::BadCovariance)
        ));
    }
}

// ---------------------------------------------------------------------------
// Binning
// ---------------------------------------------------------------------------

#[test]
fn binning_a_single_point_yields_one_unit_atom_at_the_point() {
    let spec = BinningSpec::new(1, 1).unwrap();
    let mu = bin_to_measure(&[pt(0.3, -1.7)], &spec).unwrap();
    assert_eq!(mu.len(), 1);
    assert!((mu.points()[0].x - 0.3).abs() < 1e-15);
    assert!((mu.points()[0].y + 1.7).abs() < 1e-15);
    assert_eq!(mu.masses()[0], 1.0);
}

#[test]
fn binning_square_corners_on_a_two_by_two_grid_hits_cell_centers() {
    let corners = [pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 1.0), pt(1.0, 1.0)];
    let spec = BinningSpec::new(2, 2).unwrap();
    let mu = bin_to_measure(&corners, &spec).unwrap();
    assert_eq!(mu.len(), 4);
    let mut got: Vec<(f64, f64)> = mu.points().iter().map(|p| (p.x, p.y)).collect();
    got.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let want = [(0.25, 0.25), (0.25, 0.75), (0.75, 0.25), (0.75, 0.75)];
    for ((gx, gy), (wx, wy)) in got.iter().zip(want) {
        assert!((gx - wx).abs() < 1e-15 && (gy - wy).abs() < 1e-15);
    }
    assert!(mu.masses().iter().all(|&m| (m - 0.25).abs() < 1e-15));
}

#[test]
fn binning_ten_thousand_disk_samples_gives_an_atom_count_set_by_the_grid() {
    let pts = sample_uniform_disk(10_000, 42);
    let spec = BinningSpec::new(15, 15).unwrap();
    let mu = bin_to_measure(&pts, &spec).unwrap();
    // Cells outside the disk stay empty: roughly pi/4 of the 225 cells
    // survive.
    assert!(
        (150..=200).contains(&mu.len()),
        "expected 150..=200 atoms, got {}",
        mu.len()
    );
    let total: f64 = mu.masses().iter().sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn binning_preserves_the_sample_mean_within_one_cell_diagonal() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..10 {
        let n = 200 + trial * 97;
        let pts: Vec<Point2> = (0..n)
            .map(|_| pt(rng.random_range(-3.0..5.0), rng.random_range(0.0..2.0)))
            .collect();
        let spec = BinningSpec::new(9, 7).unwrap();
        let mu = bin_to_measure(&pts, &spec).unwrap();

        let sample_mean = mean_of(&pts);
        let (mut bx, mut by) = (0.0, 0.0);
        for (p, m) in mu.points().iter().zip(mu.masses()) {
            bx += p.x * m;
            by += p.y * m;
        }
        let (lo_x, hi_x) = pts
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p.x), hi.max(p.x))
            });
        let (lo_y, hi_y) = pts
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p.y), hi.max(p.y))
            });
        let diag = ((hi_x - lo_x) / 9.0).hypot((hi_y - lo_y) / 7.0);
        let err = (bx - sample_mean.x).hypot(by - sample_mean.y);
        assert!(
            err <= diag,
            "trial {trial}: mean drifted {err} > one cell diagonal {diag}"
        );
    }
}

#[test]
fn binning_counts_the_maximum_into_the_last_cell() {
    // Both extremes land strictly inside the grid even though the maximum
    // sits exactly on the far edge.
    let spec = BinningSpec::new(4, 1).unwrap();
    let mu = bin_to_measure(&[pt(0.0, 0.0), pt(1.0, 0.0)], &spec).unwrap();
    assert_eq!(mu.len(), 2);
    let total: f64 = mu.masses().iter().sum();
    assert!((total - 1.0).abs() < 1e-15);
}

#[test]
fn binning_rejects_empty_and_non_finite_input() {
    let spec = BinningSpec::new(3, 3).unwrap();
    assert!(matches!(
        bin_to_measure(&[], &spec),
        Err(DataError::Empty(_))
    ));
    assert!(matches!(
        bin_to_measure(&[pt(0.0, 0.0), pt(f64::NAN, 1.0)], &spec),
        Err(DataError::NonFinite { row: 1 })
    ));
    assert!(BinningSpec::new(0, 3).is_err());
}

// ---------------------------------------------------------------------------
// PCA
// ---------------------------------------------------------------------------

#[test]
fn pca_on_rank_one_data_explains_everything_with_one_component() {
    let dir = [0.6, -0.8, 0.0, 0.2];
    let rows: Vec<Vec<f64>> = (0..12)
        .map(|i| {
            let t = i as f64 - 5.0;
            dir.iter().map(|d| 3.0 + t * d).collect()
        })
        .collect();
    let data = RawDataset::new(vec![], rows).unwrap();
    let (scores, ratios) = pca_reduce(&data, 1).unwrap();
    assert_eq!(scores.len(), 12);
    assert!((ratios[0] - 1.0).abs() < 1e-10, "ratio {}", ratios[0]);
}

#[test]
fn pca_finds_a_planted_two_dimensional_subspace_in_wide_data() {
    let (n, d) = (51, 154);
    let mut rng = ChaCha8Rng::seed_from_u64(13);

    // Two orthonormal directions in R^154.
    let mut u: Vec<f64> = (0..d).map(|j| (j as f64 * 0.37).sin()).collect();
    let nu = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    u.iter_mut().for_each(|x| *x /= nu);
    let mut w: Vec<f64> = (0..d).map(|j| (j as f64 * 0.61).cos()).collect();
    let uw: f64 = u.iter().zip(&w).map(|(a, b)| a * b).sum();
    w.iter_mut().zip(&u).for_each(|(wi, ui)| *wi -= uw * ui);
    let nw = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    w.iter_mut().for_each(|x| *x /= nw);

    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            let a: f64 = rng.random_range(-2.0..2.0);
            let b: f64 = rng.random_range(-2.0..2.0);
            (0..d)
                .map(|j| a * u[j] + b * w[j] + rng.random_range(-1e-3..1e-3))
                .collect()
        })
        .collect();
    let data = RawDataset::new(vec![], rows).unwrap();
    let (scores, ratios) = pca_reduce(&data, 2).unwrap();
    assert_eq!(scores.len(), n);
    assert!(ratios[0] >= ratios[1]);
    assert!(
        ratios[0] + ratios[1] >= 0.99,
        "top-2 explained {} + {}",
        ratios[0],
        ratios[1]
    );
}

#[test]
fn pca_ignores_a_constant_offset_added_to_every_row() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let rows: Vec<Vec<f64>> = (0..15)
        .map(|_| (0..6).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    let offset: Vec<f64> = (0..6).map(|j| 10.0 * (j as f64 + 1.0)).collect();
    let shifted: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| r.iter().zip(&offset).map(|(v, o)| v + o).collect())
        .collect();

    let plain = pca_reduce(&RawDataset::new(vec![], rows).unwrap(), 2).unwrap();
    let moved = pca_reduce(&RawDataset::new(vec![], shifted).unwrap(), 2).unwrap();
    for (a, b) in plain.0.iter().flatten().zip(moved.0.iter().flatten()) {
        assert!((a - b).abs() < 1e-10);
    }
    for (a, b) in plain.1.iter().zip(&moved.1) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn pca_with_full_components_preserves_pairwise_distances() {
    // Projecting onto the complete right-singular basis is an isometry of
    // the centered rows.
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let rows: Vec<Vec<f64>> = (0..20)
        .map(|_| (0..2).map(|_| rng.random_range(-4.0..4.0)).collect())
        .collect();
    let data = RawDataset::new(vec![], rows.clone()).unwrap();
    let (scores, ratios) = pca_reduce(&data, 2).unwrap();
    assert!(ratios.iter().sum::<f64>() <= 1.0 + 1e-12);

    for i in 0..rows.len() {
        for j in (i + 1)..rows.len() {
            let orig =
                ((rows[i][0] - rows[j][0]).powi(2) + (rows[i][1] - rows[j][1]).powi(2)).sqrt();
            let proj = ((scores[i][0] - scores[j][0]).powi(2)
                + (scores[i][1] - scores[j][1]).powi(2))
            .sqrt();
            assert!((orig - proj).abs() < 1e-9, "distance {orig} became {proj}");
        }
    }
}

#[test]
fn pca_rejects_constant_data_and_oversized_requests() {
    let constant = RawDataset::new(vec![], vec![vec![2.0, 2.0]; 5]).unwrap();
    assert!(matches!(
        pca_reduce(&constant, 1),
        Err(DataError::RankError)
    ));

    let data = RawDataset::new(vec![], vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
    assert!(matches!(
        pca_reduce(&data, 3),
        Err(DataError::TooManyComponents {
            requested: 3,
            max: 2
        })
    ));
    assert!(matches!(
        pca_reduce(&data, 0),
        Err(DataError::TooManyComponents { .. })
    ));
}

// ---------------------------------------------------------------------------
// k-means
// ---------------------------------------------------------------------------

#[test]
fn kmeans_with_one_cluster_returns_the_centroid() {
    let pts = vec![pt(0.0, 0.0), pt(2.0, 0.0), pt(1.0, 3.0)];
    let centers = kmeans(&pts, 1, 0).unwrap();
    assert_eq!(centers.len(), 1);
    assert!((centers[0].x - 1.0).abs() < 1e-12);
    assert!((centers[0].y - 1.0).abs() < 1e-12);
}

#[test]
fn kmeans_with_as_many_clusters_as_points_returns_the_points() {
    let pts = vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 1.0), pt(5.0, 5.0)];
    let mut centers = kmeans(&pts, 4, 17).unwrap();
    centers.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    let mut want = pts.clone();
    want.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    for (c, w) in centers.iter().zip(&want) {
        assert!((c.x - w.x).abs() < 1e-12 && (c.y - w.y).abs() < 1e-12);
    }
}

#[test]
fn kmeans_separates_two_well_spaced_blobs() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pts = Vec::new();
    for _ in 0..60 {
        pts.push(pt(
            -5.0 + rng.random_range(-0.3..0.3),
            rng.random_range(-0.3..0.3),
        ));
    }
    for _ in 0..60 {
        pts.push(pt(
            5.0 + rng.random_range(-0.3..0.3),
            rng.random_range(-0.3..0.3),
        ));
    }
    let mut centers = kmeans(&pts, 2, 1).unwrap();
    centers.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
    assert!((centers[0].x + 5.0).abs() < 0.2 && centers[0].y.abs() < 0.2);
    assert!((centers[1].x - 5.0).abs() < 0.2 && centers[1].y.abs() < 0.2);
}

#[test]
fn kmeans_is_deterministic_in_the_seed_and_validates_k() {
    let pts: Vec<Point2> = (0..30)
        .map(|i| pt((i as f64 * 0.7).sin(), (i as f64 * 0.9).cos()))
        .collect();
    assert_eq!(kmeans(&pts, 4, 2).unwrap(), kmeans(&pts, 4, 2).unwrap());
    assert!(matches!(
        kmeans(&pts, 0, 0),
        Err(DataError::BadClusterCount { k: 0, n: 30 })
    ));
    assert!(matches!(
        kmeans(&pts, 31, 0),
        Err(DataError::BadClusterCount { k: 31, n: 30 })
    ));
}

// ---------------------------------------------------------------------------
// Smoothing
// ---------------------------------------------------------------------------

#[test]
fn moving_average_passes_constants_through_and_spreads_impulses() {
    let constant = vec![3.5; 9];
    assert_eq!(moving_average_centered(&constant, 5), constant);

    let mut impulse = vec![0.0; 9];
    impulse[4] = 1.0;
    let smoothed = moving_average_centered(&impulse, 5);
    for (i, v) in smoothed.iter().enumerate() {
        let want = if (2..=6).contains(&i) { 0.2 } else { 0.0 };
        assert!((v - want).abs() < 1e-15, "index {i}: {v} != {want}");
    }

    // A window of one is the identity.
    let series = vec![1.0, -2.0, 7.0];
    assert_eq!(moving_average_centered(&series, 1), series);
}

#[test]
fn moving_average_is_exact_on_linear_interiors_and_shrinks_at_ends() {
    let series: Vec<f64> = (0..10).map(|i| 2.0 * i as f64 + 1.0).collect();
    let smoothed = moving_average_centered(&series, 5);
    // Interior windows are symmetric, so a linear trend passes through.
    for i in 2..8 {
        assert!((smoothed[i] - series[i]).abs() < 1e-12);
    }
    // At the left edge the window is [0, 1, 2].
    assert!((smoothed[0] - (series[0] + series[1] + series[2]) / 3.0).abs() < 1e-12);
}

// ---------------------------------------------------------------------------
// CSV ingestion
// ---------------------------------------------------------------------------

fn write_tmp(name: &str, contents: &str) -> tempfile::TempPath {
    let mut f = tempfile::Builder::new().suffix(name).tempfile().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f.into_temp_path()
}

#[test]
fn measure_csv_without_mass_column_gets_uniform_masses() {
    let path = write_tmp(".csv", "x,y\n0.0,0.0\n1.0,0.0\n0.0,1.0\n");
    let mu = read_measure_csv(&path).unwrap();
    assert_eq!(mu.len(), 3);
    assert!(mu.masses().iter().all(|&m| (m - 1.0 / 3.0).abs() < 1e-15));
}

#[test]
fn measure_csv_mass_column_is_normalized() {
    let path = write_tmp(".csv", "1.0,2.0,2.0\n3.0,4.0,6.0\n");
    let mu = read_measure_csv(&path).unwrap();
    assert!((mu.masses()[0] - 0.25).abs() < 1e-15);
    assert!((mu.masses()[1] - 0.75).abs() < 1e-15);
}

#[test]
fn measure_csv_rejects_bad_shapes() {
    let missing = write_tmp(".csv", "x,y\n1.0\n");
    assert!(matches!(
        read_measure_csv(&missing),
        Err(DataError::Parse { line: 2, .. })
    ));

    let mixed = write_tmp(".csv", "1.0,2.0,0.5\n3.0,4.0\n");
    assert!(matches!(
        read_measure_csv(&mixed),
        Err(DataError::Parse { line: 2, .. })
    ));

    let negative = write_tmp(".csv", "1.0,2.0,-0.5\n");
    assert!(read_measure_csv(&negative).is_err());

    let empty = write_tmp(".csv", "x,y\n");
    assert!(matches!(read_measure_csv(&empty), Err(DataError::Empty(_))));
}

#[test]
fn rows_csv_reads_labels_and_enforces_width() {
    let path = write_tmp(".csv", "label,v1,v2,v3\nAK,0.1,0.2,0.3\nAL,0.4,0.5,0.6\n");
    let data = read_rows_csv(&path).unwrap();
    assert_eq!(data.labels, vec!["AK", "AL"]);
    assert_eq!(data.n_rows(), 2);
    assert_eq!(data.n_cols(), 3);
    assert!((data.rows[1][2] - 0.6).abs() < 1e-15);

    let ragged = write_tmp(".csv", "AK,0.1,0.2\nAL,0.4\n");
    assert!(matches!(
        read_rows_csv(&ragged),
        Err(DataError::RaggedRow {
            row: 1,
            got: 1,
            want: 2
        })
    ));
}

#[test]
fn column_csv_reads_one_number_per_line() {
    let path = write_tmp(".csv", "value\n1.5\n-2.25\n0.0\n");
    assert_eq!(read_column_csv(&path).unwrap(), vec![1.5, -2.25, 0.0]);

    let wide = write_tmp(".csv", "1.0,2.0\n");
    assert!(matches!(
        read_column_csv(&wide),
        Err(DataError::Parse { line: 1, .. })
    ));
}

// ---------------------------------------------------------------------------
// Polygon quantization
// ---------------------------------------------------------------------------

fn unit_square() -> ConvexPolygon {
    ConvexPolygon::try_new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)]).unwrap()
}

#[test]
fn quantizing_the_unit_square_two_by_two_gives_quarter_masses() {
    let mu = quantize_polygon_grid(&unit_square(), 2, 2).unwrap();
    assert_eq!(mu.len(), 4);
    let mut got: Vec<(f64, f64)> = mu.points().iter().map(|p| (p.x, p.y)).collect();
    got.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let want = [(0.25, 0.25), (0.25, 0.75), (0.75, 0.25), (0.75, 0.75)];
    for ((gx, gy), (wx, wy)) in got.iter().zip(want) {
        assert!((gx - wx).abs() < 1e-12 && (gy - wy).abs() < 1e-12);
    }
    assert!(mu.masses().iter().all(|&m| (m - 0.25).abs() < 1e-12));
}

#[test]
fn quantization_preserves_the_centroid_and_total_mass() {
    let tri = ConvexPolygon::try_new(vec![
        pt(-1.0, -1.0 / 3.0),
        pt(1.0, -1.0 / 3.0),
        pt(0.0, 2.0 / 3.0),
    ])
    .unwrap();
    let mu = quantize_polygon_grid(&tri, 24, 24).unwrap();
    let total: f64 = mu.masses().iter().sum();
    assert!((total - 1.0).abs() < 1e-12);

    // Atoms sit at overlap centroids weighted by overlap area, so the
    // weighted centroid is the polygon centroid exactly (up to roundoff).
    let (mut cx, mut cy) = (0.0, 0.0);
    for (p, m) in mu.points().iter().zip(mu.masses()) {
        cx += p.x * m;
        cy += p.y * m;
    }
    let c = tri.centroid();
    assert!((cx - c.x).abs() < 1e-10 && (cy - c.y).abs() < 1e-10);
}

#[test]
fn target_atom_count_is_met_within_a_boundary_fringe() {
    let tri = ConvexPolygon::try_new(vec![pt(0.0, 0.0), pt(2.0, 0.0), pt(0.0, 2.0)]).unwrap();
    for &n in &[64usize, 256, 1024] {
        let mu = quantize_polygon(&tri, n).unwrap();
        assert!(
            mu.len() >= n * 9 / 10 && mu.len() <= n * 2,
            "target {n} produced {} atoms",
            mu.len()
        );
    }
}

// ---------------------------------------------------------------------------
// Synthetic rate curves
// ---------------------------------------------------------------------------

#[test]
fn synthetic_rates_have_planted_cluster_structure() {
    let data = synthetic_rates(51, 154, 3, 6).unwrap();
    assert_eq!(data.n_rows(), 51);
    assert_eq!(data.n_cols(), 154);
    assert_eq!(data.labels.len(), 51);
    assert!(data
        .rows
        .iter()
        .flatten()
        .all(|&v| (0.0..=1.0).contains(&v)));

    // Rows from the same planted group stay far closer to their group mean
    // than the group means are to one another.
    let mut means = vec![vec![0.0; 154]; 3];
    let mut counts = [0usize; 3];
    for (i, row) in data.rows.iter().enumerate() {
        let g = i % 3;
        counts[g] += 1;
        for (m, v) in means[g].iter_mut().zip(row) {
            *m += v;
        }
    }
    for (g, mean) in means.iter_mut().enumerate() {
        for m in mean.iter_mut() {
            *m /= counts[g] as f64;
        }
    }
    let dist = |a: &[f64], b: &[f64]| -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    };
    let mut max_intra: f64 = 0.0;
    for (i, row) in data.rows.iter().enumerate() {
        max_intra = max_intra.max(dist(row, &means[i % 3]));
    }
    let mut min_inter = f64::INFINITY;
    for a in 0..3 {
        for b in (a + 1)..3 {
            min_inter = min_inter.min(dist(&means[a], &means[b]));
        }
    }
    assert!(
        min_inter > 2.0 * max_intra,
        "groups overlap: inter {min_inter} vs intra {max_intra}"
    );

    assert_eq!(synthetic_rates(51, 154, 3, 6).unwrap(), data);
    assert!(synthetic_rates(0, 10, 3, 0).is_err());
}
