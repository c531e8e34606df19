//! Optimal-transport contracts. The exact discrete solver is checked
//! against brute-force oracles (assignment enumeration, the 2x2 closed
//! form, 1D quantile integration); the semidiscrete dual is checked
//! against frozen closed-form instances, finite differences, and finally
//! against the exact solver on quantized polygons. The two routes share
//! no solver code, which is what makes the last comparison meaningful.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use waa::geometry::{ConvexPolygon, HalfPlane, Point2};
use waa::oned::{w2_1d, Empirical1D};
use waa::ot::{
    dual_ascent, dual_gradient, dual_objective, w2_semidiscrete, w2_squared_exact, AscentConfig,
    DiscreteMeasure, DualPotential, OtError, MAX_EXACT_PAIRS,
};

fn pt(x: f64, y: f64) -> Point2 {
    Point2::new(x, y)
}

fn square(half: f64) -> ConvexPolygon {
    ConvexPolygon::try_new(vec![
        pt(-half, -half),
        pt(half, -half),
        pt(half, half),
        pt(-half, half),
    ])
    .unwrap()
}

fn random_points(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Vec<Point2> {
    let mut out: Vec<Point2> = Vec::with_capacity(n);
    while out.len() < n {
        let p = pt(rng.random_range(-r..r), rng.random_range(-r..r));
        if out.iter().all(|q| q.dist_sq(p) > 1e-9) {
            out.push(p);
        }
    }
    out
}

fn random_masses(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
    let s: f64 = raw.iter().sum();
    raw.iter().map(|m| m / s).collect()
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// Minimum average squared distance over all assignments, by exhaustive
/// permutation search. Only viable for small n, which is the point.
fn assignment_oracle(xs: &[Point2], ys: &[Point2]) -> f64 {
    fn go(xs: &[Point2], ys: &mut Vec<Point2>, i: usize, best: &mut f64) {
        if i == xs.len() {
            let cost: f64 = xs.iter().zip(ys.iter()).map(|(a, b)| a.dist_sq(*b)).sum();
            *best = best.min(cost);
            return;
        }
        for j in i..ys.len() {
            ys.swap(i, j);
            go(xs, ys, i + 1, best);
            ys.swap(i, j);
        }
    }
    let mut best = f64::INFINITY;
    let mut ys = ys.to_vec();
    go(xs, &mut ys, 0, &mut best);
    best / xs.len() as f64
}

/// 2x2 transport in closed form: the cost is linear in the single free
/// flow variable, so the optimum sits at one end of its feasible range.
fn two_by_two_oracle(xs: &[Point2; 2], p: f64, ys: &[Point2; 2], q: f64) -> f64 {
    let c = |i: usize, j: usize| xs[i].dist_sq(ys[j]);
    let lo = (p + q - 1.0).max(0.0);
    let hi = p.min(q);
    let cost = |f11: f64| {
        f11 * c(0, 0) + (p - f11) * c(0, 1) + (q - f11) * c(1, 0) + (1.0 - p - q + f11) * c(1, 1)
    };
    cost(lo).min(cost(hi))
}

/// Grid quantization of the uniform measure on a polygon, built from the
/// geometry clip primitive only (independent of any library quantizer).
fn quantize_uniform(poly: &ConvexPolygon, res: usize) -> DiscreteMeasure {
    let (lo, hi) = poly.bbox();
    let dx = (hi.x - lo.x) / res as f64;
    let dy = (hi.y - lo.y) / res as f64;
    let mut pts = Vec::new();
    let mut ms = Vec::new();
    for i in 0..res {
        for j in 0..res {
            let x0 = lo.x + i as f64 * dx;
            let y0 = lo.y + j as f64 * dy;
            let cell = poly
                .clip(&HalfPlane::new(pt(-1.0, 0.0), -x0).unwrap())
                .and_then(|p| p.clip(&HalfPlane::new(pt(1.0, 0.0), x0 + dx).unwrap()))
                .and_then(|p| p.clip(&HalfPlane::new(pt(0.0, -1.0), -y0).unwrap()))
                .and_then(|p| p.clip(&HalfPlane::new(pt(0.0, 1.0), y0 + dy).unwrap()));
            if let Some(c) = cell {
                pts.push(c.centroid());
                ms.push(c.area());
            }
        }
    }
    let total: f64 = ms.iter().sum();
    for m in &mut ms {
        *m /= total;
    }
    DiscreteMeasure::new(&pts, &ms).unwrap()
}

// ---------------------------------------------------------------------------
// Exact discrete solver
// ---------------------------------------------------------------------------

#[test]
fn point_mass_transport_is_squared_distance() {
    let a = DiscreteMeasure::new(&[pt(1.0, 2.0)], &[1.0]).unwrap();
    let b = DiscreteMeasure::new(&[pt(4.0, 6.0)], &[1.0]).unwrap();
    let got = w2_squared_exact(&a, &b).unwrap();
    assert!((got - 25.0).abs() < 1e-12, "got {got}");
}

#[test]
fn transport_to_self_is_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(211);
    for _ in 0..10 {
        let n = rng.random_range(1..25);
        let mu = DiscreteMeasure::new(
            &random_points(&mut rng, n, 2.0),
            &random_masses(&mut rng, n),
        )
        .unwrap();
        let got = w2_squared_exact(&mu, &mu).unwrap();
        assert!(got.abs() < 1e-12, "self distance {got}");
    }
}

#[test]
fn single_source_transport_sums_target_moments() {
    let mut rng = ChaCha8Rng::seed_from_u64(223);
    for _ in 0..10 {
        let x = pt(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let mu = DiscreteMeasure::new(&[x], &[1.0]).unwrap();
        let n = rng.random_range(2..20);
        let ys = random_points(&mut rng, n, 2.0);
        let qs = random_masses(&mut rng, n);
        let nu = DiscreteMeasure::new(&ys, &qs).unwrap();
        let want: f64 = ys.iter().zip(&qs).map(|(y, q)| q * y.dist_sq(x)).sum();
        let got = w2_squared_exact(&mu, &nu).unwrap();
        assert!(
            (got - want).abs() < 1e-12 * want.max(1.0),
            "got {got}, want {want}"
        );
    }
}

#[test]
fn equal_mass_transport_matches_assignment_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(227);
    for trial in 0..24 {
        let n = rng.random_range(2..8);
        let xs = random_points(&mut rng, n, 2.0);
        let ys = random_points(&mut rng, n, 2.0);
        let em = vec![1.0 / n as f64; n];
        let mu = DiscreteMeasure::new(&xs, &em).unwrap();
        let nu = DiscreteMeasure::new(&ys, &em).unwrap();
        let got = w2_squared_exact(&mu, &nu).unwrap();
        let want = assignment_oracle(&xs, &ys);
        assert!(
            (got - want).abs() <= 1e-10 * want.max(1.0),
            "trial {trial}: solver {got} vs oracle {want}"
        );
    }
}

#[test]
fn two_by_two_transport_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(229);
    for trial in 0..30 {
        let xs = [
            pt(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)),
            pt(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)),
        ];
        let ys = [
            pt(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)),
            pt(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)),
        ];
        let p = rng.random_range(0.05..0.95);
        let q = rng.random_range(0.05..0.95);
        let mu = DiscreteMeasure::new(&xs, &[p, 1.0 - p]).unwrap();
        let nu = DiscreteMeasure::new(&ys, &[q, 1.0 - q]).unwrap();
        let got = w2_squared_exact(&mu, &nu).unwrap();
        let want = two_by_two_oracle(&xs, p, &ys, q);
        assert!(
            (got - want).abs() <= 1e-10 * want.max(1.0),
            "trial {trial}: solver {got} vs closed form {want}"
        );
    }
}

#[test]
fn collinear_transport_matches_quantile_integration() {
    // Measures on a common line reduce to 1D, where the quantile coupling
    // is provably optimal — an oracle from an entirely different theory.
    let mut rng = ChaCha8Rng::seed_from_u64(233);
    for trial in 0..15 {
        let n = rng.random_range(2..30);
        let m = rng.random_range(2..30);
        let xs: Vec<f64> = random_points(&mut rng, n, 3.0)
            .iter()
            .map(|p| p.x)
            .collect();
        let ys: Vec<f64> = random_points(&mut rng, m, 3.0)
            .iter()
            .map(|p| p.x)
            .collect();
        let pm = random_masses(&mut rng, n);
        let qm = random_masses(&mut rng, m);
        let a1 = Empirical1D::from_weighted(&xs, &pm).unwrap();
        let b1 = Empirical1D::from_weighted(&ys, &qm).unwrap();
        let mu = DiscreteMeasure::new_1d(&xs, &pm).unwrap();
        let nu = DiscreteMeasure::new_1d(&ys, &qm).unwrap();
        let got = w2_squared_exact(&mu, &nu).unwrap();
        let want = w2_1d(&a1, &b1).powi(2);
        assert!(
            (got - want).abs() <= 1e-9 * want.max(1.0),
            "trial {trial}: planar solver {got} vs quantile {want}"
        );
    }
}

#[test]
fn transport_is_symmetric_and_translation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(239);
    for _ in 0..10 {
        let n = rng.random_range(2..15);
        let m = rng.random_range(2..15);
        let mu = DiscreteMeasure::new(
            &random_points(&mut rng, n, 2.0),
            &random_masses(&mut rng, n),
        )
        .unwrap();
        let nu = DiscreteMeasure::new(
            &random_points(&mut rng, m, 2.0),
            &random_masses(&mut rng, m),
        )
        .unwrap();
        let ab = w2_squared_exact(&mu, &nu).unwrap();
        let ba = w2_squared_exact(&nu, &mu).unwrap();
        assert!((ab - ba).abs() <= 1e-10 * ab.max(1.0), "{ab} vs {ba}");
        let t = pt(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let shifted = w2_squared_exact(&mu.translated(t), &nu.translated(t)).unwrap();
        assert!(
            (ab - shifted).abs() <= 1e-9 * ab.max(1.0),
            "translation changed {ab} to {shifted}"
        );
    }
}

#[test]
fn oversized_problems_are_rejected_up_front() {
    let mut pts = Vec::new();
    for i in 0..40 {
        for j in 0..40 {
            pts.push(pt(i as f64, j as f64));
        }
    }
    let ms = vec![1.0 / pts.len() as f64; pts.len()];
    let mu = DiscreteMeasure::new(&pts, &ms).unwrap();
    // 1600 × 1600 = 2.56M pairs > the cap.
    assert!(1600 * 1600 > MAX_EXACT_PAIRS);
    assert!(matches!(
        w2_squared_exact(&mu, &mu),
        Err(OtError::SizeLimit { .. })
    ));
}

// ---------------------------------------------------------------------------
// Discrete measure bookkeeping
// ---------------------------------------------------------------------------

#[test]
fn measure_statistics_on_a_known_pair() {
    let mu = DiscreteMeasure::new(&[pt(0.0, 0.0), pt(2.0, 0.0)], &[0.5, 0.5]).unwrap();
    assert!(mu.mean().dist(pt(1.0, 0.0)) < 1e-15);
    let cov = mu.covariance();
    assert!((cov[0][0] - 1.0).abs() < 1e-15);
    assert!(cov[0][1].abs() < 1e-15);
    assert!(cov[1][1].abs() < 1e-15);
    assert!((mu.covariance_top_eigenvalue() - 1.0).abs() < 1e-12);
    assert!((mu.std_dev() - 1.0).abs() < 1e-12);
}

#[test]
fn measure_constructors_reject_bad_input() {
    assert!(matches!(
        DiscreteMeasure::new(&[], &[]),
        Err(OtError::NoAtoms)
    ));
    assert!(matches!(
        DiscreteMeasure::new(&[pt(0.0, 0.0)], &[0.5]),
        Err(OtError::MassNotNormalized(_))
    ));
    assert!(matches!(
        DiscreteMeasure::new(&[pt(0.0, 0.0), pt(0.0, 0.0)], &[0.5, 0.5]),
        Err(OtError::DuplicateAtom)
    ));
    assert!(matches!(
        DiscreteMeasure::new(&[pt(0.0, 0.0), pt(1.0, 0.0)], &[1.5, -0.5]),
        Err(OtError::InvalidMass)
    ));
    assert!(matches!(
        DiscreteMeasure::new(&[pt(0.0, 0.0), pt(1.0, 0.0)], &[0.5]),
        Err(OtError::MismatchedLengths { .. })
    ));
}

// ---------------------------------------------------------------------------
// Semidiscrete dual: frozen instances
// ---------------------------------------------------------------------------

#[test]
fn four_symmetric_atoms_in_a_square_solve_at_zero_potential() {
    // Cells are the four quadrants; each atom sits at its cell's center.
    // The dual value at zero is (1/|Ω|)·Σ ∫ |y-xᵢ|² = 4·(1/6)/4 = 1/6.
    let omega = square(1.0);
    let atoms = [pt(-0.5, -0.5), pt(0.5, -0.5), pt(0.5, 0.5), pt(-0.5, 0.5)];
    let mu = DiscreteMeasure::uniform_on_points(&atoms).unwrap();
    let phi0 = DualPotential::zeros(4);
    let grad = dual_gradient(&omega, &mu, phi0.values()).unwrap();
    for g in &grad {
        assert!(g.abs() < 1e-12, "gradient at optimum: {g}");
    }
    let val = dual_objective(&omega, &mu, phi0.values()).unwrap();
    assert!((val - 1.0 / 6.0).abs() < 1e-13, "dual value {val}");

    let report = dual_ascent(&omega, &mu, phi0, &AscentConfig::default()).unwrap();
    assert!(report.converged);
    assert_eq!(report.iterations, 1);
    assert!((report.w2_squared - 1.0 / 6.0).abs() < 1e-13);
    assert!((report.w2() - (1.0f64 / 6.0).sqrt()).abs() < 1e-13);
}

#[test]
fn lopsided_masses_produce_the_expected_gradient() {
    // Equal cells but masses (0.9, 0.1): the gradient reads the imbalance.
    let omega = square(1.0);
    let mu = DiscreteMeasure::new(&[pt(-1.0, 0.0), pt(1.0, 0.0)], &[0.9, 0.1]).unwrap();
    let grad = dual_gradient(&omega, &mu, &[0.0, 0.0]).unwrap();
    assert!((grad[0] - 0.4).abs() < 1e-12, "grad {grad:?}");
    assert!((grad[1] + 0.4).abs() < 1e-12);
}

// ---------------------------------------------------------------------------
// Semidiscrete dual: structural properties
// ---------------------------------------------------------------------------

fn random_dual_instance(
    rng: &mut ChaCha8Rng,
    max_atoms: usize,
) -> (ConvexPolygon, DiscreteMeasure) {
    let k = rng.random_range(4..8);
    let verts: Vec<Point2> = (0..k)
        .map(|i| {
            let t = std::f64::consts::TAU * (i as f64 + rng.random_range(0.05..0.8)) / k as f64;
            pt(1.8 * t.cos(), 1.4 * t.sin())
        })
        .collect();
    let omega = ConvexPolygon::try_new(verts).unwrap();
    let n = rng.random_range(2..=max_atoms);
    let pts = random_points(rng, n, 1.2);
    let ms = random_masses(rng, n);
    (omega, DiscreteMeasure::new(&pts, &ms).unwrap())
}

#[test]
fn dual_gradient_components_sum_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(241);
    for _ in 0..20 {
        let (omega, mu) = random_dual_instance(&mut rng, 20);
        let phi: Vec<f64> = (0..mu.len()).map(|_| rng.random_range(-0.3..0.3)).collect();
        let grad = dual_gradient(&omega, &mu, &phi).unwrap();
        let s: f64 = grad.iter().sum();
        assert!(s.abs() < 1e-10, "gradient sums to {s}");
    }
}

#[test]
fn dual_objective_is_invariant_to_constant_shifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(251);
    for _ in 0..15 {
        let (omega, mu) = random_dual_instance(&mut rng, 15);
        let phi: Vec<f64> = (0..mu.len()).map(|_| rng.random_range(-0.3..0.3)).collect();
        let c = rng.random_range(-2.0..2.0);
        let shifted: Vec<f64> = phi.iter().map(|p| p + c).collect();
        let v0 = dual_objective(&omega, &mu, &phi).unwrap();
        let v1 = dual_objective(&omega, &mu, &shifted).unwrap();
        assert!(
            (v0 - v1).abs() < 1e-10,
            "shift moved the dual: {v0} vs {v1}"
        );
        let g0 = dual_gradient(&omega, &mu, &phi).unwrap();
        let g1 = dual_gradient(&omega, &mu, &shifted).unwrap();
        for (a, b) in g0.iter().zip(&g1) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn dual_objective_is_concave_along_random_directions() {
    let mut rng = ChaCha8Rng::seed_from_u64(257);
    for _ in 0..15 {
        let (omega, mu) = random_dual_instance(&mut rng, 12);
        let phi: Vec<f64> = (0..mu.len()).map(|_| rng.random_range(-0.2..0.2)).collect();
        let dir: Vec<f64> = (0..mu.len()).map(|_| rng.random_range(-1.0..1.0)).collect();
        let h = 0.05;
        let at = |s: f64| {
            let p: Vec<f64> = phi.iter().zip(&dir).map(|(p, d)| p + s * d).collect();
            dual_objective(&omega, &mu, &p).unwrap()
        };
        let second = at(-h) - 2.0 * at(0.0) + at(h);
        assert!(second <= 1e-9, "second difference {second} > 0");
    }
}

#[test]
fn dual_gradient_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(263);
    for trial in 0..6 {
        let (omega, mu) = random_dual_instance(&mut rng, 10);
        let phi: Vec<f64> = (0..mu.len()).map(|_| rng.random_range(-0.2..0.2)).collect();
        let grad = dual_gradient(&omega, &mu, &phi).unwrap();
        let h = 1e-6 * omega.diameter_sq().max(1.0);
        for i in 0..mu.len() {
            let mut hi = phi.clone();
            let mut lo = phi.clone();
            hi[i] += h;
            lo[i] -= h;
            let fd = (dual_objective(&omega, &mu, &hi).unwrap()
                - dual_objective(&omega, &mu, &lo).unwrap())
                / (2.0 * h);
            assert!(
                (grad[i] - fd).abs() <= 1e-5 * fd.abs().max(1e-3),
                "trial {trial}, component {i}: analytic {} vs fd {fd}",
                grad[i]
            );
        }
    }
}

#[test]
fn ascent_converges_and_balances_cell_areas() {
    let mut rng = ChaCha8Rng::seed_from_u64(269);
    for _ in 0..6 {
        let (omega, mu) = random_dual_instance(&mut rng, 15);
        let cfg = AscentConfig::default();
        let report = dual_ascent(&omega, &mu, DualPotential::zeros(mu.len()), &cfg).unwrap();
        assert!(report.converged, "hit the iteration cap");
        assert!(report.final_residual <= cfg.delta1);
        assert!(report.w2_squared >= 0.0);
        // At the stop, the l1 mass residual is bounded by delta1/tau1.
        let grad = dual_gradient(&omega, &mu, report.phi_star.values()).unwrap();
        let l1: f64 = grad.iter().map(|g| g.abs()).sum();
        assert!(
            l1 <= cfg.delta1 / cfg.tau1 + 1e-12,
            "mass residual {l1} too large"
        );
    }
}

#[test]
fn ascent_rejects_mismatched_potential_length() {
    let omega = square(1.0);
    let mu = DiscreteMeasure::uniform_on_points(&[pt(-0.3, 0.0), pt(0.3, 0.0)]).unwrap();
    assert!(matches!(
        dual_ascent(
            &omega,
            &mu,
            DualPotential::zeros(3),
            &AscentConfig::default()
        ),
        Err(OtError::MismatchedLengths { .. })
    ));
}

// ---------------------------------------------------------------------------
// Route agreement: geometric dual vs exact discrete solver
// ---------------------------------------------------------------------------

#[test]
fn semidiscrete_distance_agrees_with_exact_transport_to_quantization() {
    let mut rng = ChaCha8Rng::seed_from_u64(271);
    for trial in 0..3 {
        let (omega, mu) = random_dual_instance(&mut rng, 10);
        let cfg = AscentConfig {
            delta1: 1e-5,
            ..AscentConfig::default()
        };
        let w_dual = w2_semidiscrete(&omega, &mu, &cfg).unwrap();
        let quantized = quantize_uniform(&omega, 64);
        let w_exact = w2_squared_exact(&mu, &quantized).unwrap().sqrt();
        // The quantization moves the uniform measure by at most about one
        // cell radius; the dual side carries its own stopping tolerance.
        let slack = 0.03 * omega.diameter_sq().sqrt() + 0.01;
        assert!(
            (w_dual - w_exact).abs() <= slack,
            "trial {trial}: dual {w_dual} vs exact {w_exact} (slack {slack})"
        );
    }
}
