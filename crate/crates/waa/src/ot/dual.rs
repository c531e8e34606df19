//! The semidiscrete Kantorovich dual and its fixed-step gradient ascent.
//!
//! For a discrete measure `mu = Σ mᵢ δ_{xᵢ}` and the uniform measure on a
//! convex polygon `Ω`, the squared 2-Wasserstein distance is the maximum of
//! the concave dual functional
//!
//! ```text
//!   Φ(φ) = Σᵢ [ φᵢ mᵢ  +  (1/|Ω|) ∫_{Cᵢ(φ)} ( |y - xᵢ|² - φᵢ ) dy ]
//! ```
//!
//! where `Cᵢ(φ)` is the power cell of site `xᵢ` with weight `φᵢ` clipped to
//! `Ω`. Its gradient has a transparent mass-balance form,
//!
//! ```text
//!   ∂Φ/∂φᵢ = mᵢ - |Cᵢ(φ)| / |Ω|,
//! ```
//!
//! so ascent raises the weight of every atom receiving too little of `Ω`
//! and lowers it where the cell is too big. The fixed-step iteration here
//! is deliberately simple: each step costs one power-diagram construction,
//! and the iteration stops when the l1 norm of the update drops to
//! `delta1`.

use serde::{Deserialize, Serialize};

use super::{DiscreteMeasure, OtError};
use crate::geometry::{ConvexPolygon, HalfPlane, Point2, PowerDiagram};

/// Kantorovich dual weights, one per atom of the source measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualPotential(Vec<f64>);

impl DualPotential {
    pub fn zeros(n: usize) -> Self {
        DualPotential(vec![0.0; n])
    }

    pub fn new(values: Vec<f64>) -> Result<Self, OtError> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(OtError::NonFinite);
        }
        Ok(DualPotential(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Step size, stopping threshold and iteration cap for [`dual_ascent`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AscentConfig {
    /// Fixed ascent step `tau1`.
    pub tau1: f64,
    /// Stop when the l1 norm of the weight update is at most `delta1`.
    pub delta1: f64,
    /// Iteration cap; exceeding it is reported, not an error.
    pub max_iter: usize,
}

impl Default for AscentConfig {
    fn default() -> Self {
        AscentConfig {
            tau1: 0.5,
            delta1: 1e-3,
            max_iter: 50_000,
        }
    }
}

/// Outcome of a dual ascent run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualAscentReport {
    pub phi_star: DualPotential,
    pub iterations: usize,
    /// l1 norm of the last weight update (`tau1` × mass imbalance).
    pub final_residual: f64,
    /// Dual value at `phi_star`, clamped to `>= 0`: the squared distance.
    pub w2_squared: f64,
    /// False iff the iteration cap was hit before reaching `delta1`.
    pub converged: bool,
}

impl DualAscentReport {
    pub fn w2(&self) -> f64 {
        self.w2_squared.sqrt()
    }
}

/// Evaluates the dual functional `Φ(φ)`.
pub fn dual_objective(
    omega: &ConvexPolygon,
    mu: &DiscreteMeasure,
    phi: &[f64],
) -> Result<f64, OtError> {
    let diagram = PowerDiagram::build(omega, mu.points(), phi)?;
    Ok(dual_objective_from_diagram(omega, mu, phi, &diagram))
}

fn dual_objective_from_diagram(
    omega: &ConvexPolygon,
    mu: &DiscreteMeasure,
    phi: &[f64],
    diagram: &PowerDiagram,
) -> f64 {
    let area = omega.area();
    let mut acc = 0.0;
    for (i, (p, m)) in mu.points().iter().zip(mu.masses()).enumerate() {
        acc += phi[i] * m;
        if let Some(cell) = diagram.cell(i) {
            acc += (cell.second_moment_about(*p) - phi[i] * cell.area()) / area;
        }
    }
    acc
}

/// Gradient of the dual functional: `mᵢ - |Cᵢ| / |Ω|` per atom.
///
/// The components sum to `Σ mᵢ - 1 = 0` up to the clipped-sliver tolerance,
/// reflecting that a uniform shift of all weights leaves `Φ` unchanged.
pub fn dual_gradient(
    omega: &ConvexPolygon,
    mu: &DiscreteMeasure,
    phi: &[f64],
) -> Result<Vec<f64>, OtError> {
    let mut areas = vec![0.0; mu.len()];
    power_cell_areas(omega, mu.points(), phi, &mut areas)?;
    let inv = 1.0 / omega.area();
    Ok(mu
        .masses()
        .iter()
        .zip(&areas)
        .map(|(m, a)| m - a * inv)
        .collect())
}

/// Cell areas of the power diagram, computed without materializing cell
/// polygons. This is the inner loop of the ascent: one Sutherland–Hodgman
/// chain per site into reused buffers.
fn power_cell_areas(
    omega: &ConvexPolygon,
    sites: &[Point2],
    weights: &[f64],
    areas: &mut [f64],
) -> Result<(), OtError> {
    debug_assert_eq!(sites.len(), weights.len());
    debug_assert_eq!(sites.len(), areas.len());
    let floor = omega.area_floor();
    let tol = omega.tol();
    let mut cur: Vec<Point2> = Vec::with_capacity(16);
    let mut next: Vec<Point2> = Vec::with_capacity(16);
    for (i, (&xi, &wi)) in sites.iter().zip(weights).enumerate() {
        cur.clear();
        cur.extend_from_slice(omega.vertices());
        let mut empty = false;
        for (j, (&xj, &wj)) in sites.iter().zip(weights).enumerate() {
            if i == j {
                continue;
            }
            let hp = HalfPlane::power_bisector(xi, wi, xj, wj)?;
            crate::geometry::clip_in_place(&cur, &hp, tol, &mut next);
            std::mem::swap(&mut cur, &mut next);
            if cur.len() < 3 {
                empty = true;
                break;
            }
        }
        let a = if empty {
            0.0
        } else {
            crate::geometry::signed_area(&cur)
        };
        areas[i] = if a < floor { 0.0 } else { a };
    }
    Ok(())
}

/// Fixed-step gradient ascent on the dual from the warm start `phi0`.
///
/// Per iteration: `φ ← φ + tau1 · ∇Φ(φ)`. Stops when
/// `‖update‖₁ = tau1 · ‖∇Φ‖₁ ≤ delta1` or after `max_iter` iterations
/// (reported through [`DualAscentReport::converged`] rather than an error,
/// so callers can decide whether a slightly unconverged transport estimate
/// is usable).
pub fn dual_ascent(
    omega: &ConvexPolygon,
    mu: &DiscreteMeasure,
    phi0: DualPotential,
    cfg: &AscentConfig,
) -> Result<DualAscentReport, OtError> {
    if phi0.len() != mu.len() {
        return Err(OtError::MismatchedLengths {
            points: mu.len(),
            masses: phi0.len(),
        });
    }
    let mut phi = phi0.0;
    let mut areas = vec![0.0; mu.len()];
    let inv_area = 1.0 / omega.area();
    let mut iterations = 0;
    let mut residual = f64::INFINITY;
    let mut converged = false;
    while iterations < cfg.max_iter {
        power_cell_areas(omega, mu.points(), &phi, &mut areas)?;
        let mut l1 = 0.0;
        for ((phi_i, m), a) in phi.iter_mut().zip(mu.masses()).zip(&areas) {
            let step = cfg.tau1 * (m - a * inv_area);
            *phi_i += step;
            l1 += step.abs();
        }
        iterations += 1;
        residual = l1;
        if l1 <= cfg.delta1 {
            converged = true;
            break;
        }
    }
    let phi = DualPotential(phi);
    let w2_squared = {
        let diagram = PowerDiagram::build(omega, mu.points(), phi.values())?;
        let value = dual_objective_from_diagram(omega, mu, phi.values(), &diagram);
        debug_assert!(
            value >= -1e-9,
            "dual value {value} significantly negative; transport cost cannot be"
        );
        value.max(0.0)
    };
    Ok(DualAscentReport {
        phi_star: phi,
        iterations,
        final_residual: residual,
        w2_squared,
        converged,
    })
}

/// `W2(mu, uniform on omega)` via dual ascent from zero weights.
pub fn w2_semidiscrete(
    omega: &ConvexPolygon,
    mu: &DiscreteMeasure,
    cfg: &AscentConfig,
) -> Result<f64, OtError> {
    let report = dual_ascent(omega, mu, DualPotential::zeros(mu.len()), cfg)?;
    Ok(report.w2())
}
