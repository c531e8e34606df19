use crate::geometry::{
    bisector_crossings, integrate_edge_weighted, ConvexPolygon, Point2, PowerDiagram,
};
use crate::ot::{DiscreteMeasure, DualPotential};

use super::{ShapeError, SolverConfig};

/// The transport cost field induced by a potential: on each power cell of
/// the diagram, `f(y) = |y - x_i|² - φ_i` for that cell's site. Because the
/// cells are exactly the regions where their quadratic is the pointwise
/// minimum, the field evaluates as `min_i (|y - x_i|² - φ_i)` — continuous
/// across cell boundaries, with kinks on them.
#[derive(Debug, Clone)]
pub struct FPhiField {
    diagram: PowerDiagram,
}

impl FPhiField {
    /// Builds the power diagram of `omega` under the given sites/potential.
    pub fn new(
        omega: &ConvexPolygon,
        mu: &DiscreteMeasure,
        phi: &DualPotential,
    ) -> Result<Self, ShapeError> {
        let diagram = PowerDiagram::build(omega, mu.points(), phi.values())?;
        Ok(FPhiField { diagram })
    }

    pub fn diagram(&self) -> &PowerDiagram {
        &self.diagram
    }

    /// Pointwise value `min_i (|y - x_i|² - φ_i)`.
    pub fn eval(&self, y: Point2) -> f64 {
        self.diagram
            .sites()
            .iter()
            .zip(self.diagram.weights())
            .map(|(x, w)| y.dist_sq(*x) - w)
            .fold(f64::INFINITY, f64::min)
    }

    /// Parameters in `(0,1)` where the segment crosses a cell boundary;
    /// between consecutive crossings the field is a single quadratic.
    pub fn crossings(&self, p0: Point2, p1: Point2) -> Vec<f64> {
        bisector_crossings(self.diagram.sites(), self.diagram.weights(), p0, p1)
    }

    /// `∫_Ω f` as a sum of per-cell second moments: each cell contributes
    /// `∫_cell |y - x_i|² dy - φ_i·|cell|`, both available in closed form.
    pub fn region_integral(&self) -> f64 {
        let mut acc = 0.0;
        for (i, cell) in self.diagram.cells().iter().enumerate() {
            if let Some(c) = cell {
                acc += c.second_moment_about(self.diagram.sites()[i])
                    - self.diagram.weights()[i] * c.area();
            }
        }
        acc
    }
}

/// What to integrate along the boundary when differentiating a region
/// integral with respect to a vertex.
#[derive(Debug, Clone, Copy)]
pub enum RegionIntegrand<'a> {
    /// `g ≡ 1`: differentiates the area.
    One,
    /// `g = f_φ`: differentiates the transport cost integral.
    FPhi(&'a FPhiField),
}

/// Area-growth penalty `ε·U_m` of the uniform density on `omega`:
/// `ε/((m-1)·|Ω|^{m-1})` for `m > 1`, and the limiting `-ε·log|Ω|` at
/// `m = 1`. Decreasing in the area, so it rewards spreading out.
pub fn renyi_energy(omega: &ConvexPolygon, epsilon: f64, m: f64) -> f64 {
    renyi_energy_of_area(omega.area(), epsilon, m)
}

pub(crate) fn renyi_energy_of_area(area: f64, epsilon: f64, m: f64) -> f64 {
    if epsilon == 0.0 {
        return 0.0;
    }
    if m == 1.0 {
        -epsilon * area.ln()
    } else {
        epsilon / ((m - 1.0) * area.powf(m - 1.0))
    }
}

/// Moving vertex `ell` of a polygon moves its two adjacent edges; for a
/// region integral `∫_Ω g` the resulting derivative is supported on those
/// edges and weighted by how much of each edge's displacement the vertex
/// controls — affine from 0 at the fixed neighbor to 1 at the vertex:
///
/// ```text
/// ∇_{a_ℓ} ∫_Ω g = (∫_{E_{ℓ-1}} g·F) n_{ℓ-1} + (∫_{E_ℓ} g·F) n_ℓ
/// ```
///
/// with `n` the outward unit normals. Edges are split at cell boundaries
/// first, so each quadrature piece sees a single quadratic (degree ≤ 3
/// with the affine factor — exact for the 2-point Gauss rule used).
pub fn vertex_gradient_of_region_integral(
    omega: &ConvexPolygon,
    g: RegionIntegrand<'_>,
    ell: usize,
) -> Point2 {
    let k = omega.len();
    let prev = (ell + k - 1) % k;
    let left = edge_displacement_integrals(omega, g, prev);
    let right = edge_displacement_integrals(omega, g, ell);
    omega.outward_normal(prev) * left.1 + omega.outward_normal(ell) * right.0
}

/// The pair `(∫_E g·(1-t) ds, ∫_E g·t ds)` along edge `e`, i.e. the edge
/// integral weighted toward its start and toward its end. Computing both
/// at once lets the caller assemble all vertex gradients with one pass
/// over the edges.
fn edge_displacement_integrals(
    omega: &ConvexPolygon,
    g: RegionIntegrand<'_>,
    e: usize,
) -> (f64, f64) {
    let (p0, p1) = (omega.vertices()[e], omega.vertices()[(e + 1) % omega.len()]);
    match g {
        RegionIntegrand::One => {
            // ∫ (1-t) ds = ∫ t ds = |E|/2 exactly.
            let half = 0.5 * p0.dist(p1);
            (half, half)
        }
        RegionIntegrand::FPhi(field) => {
            let cuts = field.crossings(p0, p1);
            let toward_start = integrate_edge_weighted(p0, p1, &cuts, |y| field.eval(y), 1.0, 0.0);
            let toward_end = integrate_edge_weighted(p0, p1, &cuts, |y| field.eval(y), 0.0, 1.0);
            (toward_start, toward_end)
        }
    }
}

/// Vertex gradients of the full objective
///
/// ```text
/// F(Ω) = (1/|Ω|) ∫_Ω f_φ + ε·U_m(1_Ω/|Ω|)
/// ```
///
/// at fixed potential `phi_star` (the envelope reading of the min–max:
/// at the inner maximizer, differentiating through φ contributes nothing
/// to first order). By the quotient rule, with `I = ∫_Ω f_φ`, `A = |Ω|`:
///
/// ```text
/// ∇_ℓ F = (∇_ℓ I)/A - I·(∇_ℓ A)/A² - ε·A^{-m}·(∇_ℓ A)
/// ```
///
/// where the last term is the area derivative of the penalty for every
/// `m ≥ 1` (the `m = 1` logarithmic branch included).
pub fn objective_vertex_gradient(
    mu: &DiscreteMeasure,
    omega: &ConvexPolygon,
    phi_star: &DualPotential,
    cfg: &SolverConfig,
) -> Result<Vec<Point2>, ShapeError> {
    let field = FPhiField::new(omega, mu, phi_star)?;
    let k = omega.len();
    let area = omega.area();
    let integral = field.region_integral();

    // One pass over edges: both displacement-weighted integrals of f_φ,
    // plus the exact half-length pair for the area.
    let mut f_pair = Vec::with_capacity(k);
    let mut a_pair = Vec::with_capacity(k);
    for e in 0..k {
        f_pair.push(edge_displacement_integrals(
            omega,
            RegionIntegrand::FPhi(&field),
            e,
        ));
        a_pair.push(edge_displacement_integrals(omega, RegionIntegrand::One, e));
    }

    let penalty_slope = if cfg.epsilon == 0.0 {
        0.0
    } else {
        cfg.epsilon * area.powf(-cfg.m_exponent)
    };
    let mut grads = Vec::with_capacity(k);
    for ell in 0..k {
        let prev = (ell + k - 1) % k;
        let (n_prev, n_here) = (omega.outward_normal(prev), omega.outward_normal(ell));
        let gi = n_prev * f_pair[prev].1 + n_here * f_pair[ell].0;
        let ga = n_prev * a_pair[prev].1 + n_here * a_pair[ell].0;
        grads.push(gi / area - ga * (integral / (area * area)) - ga * penalty_slope);
    }
    Ok(grads)
}
