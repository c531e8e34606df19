use serde::{Deserialize, Serialize};

use super::{ConvexPolygon, GeometryError, Point2};

/// The closed half-plane `{ p : <normal, p> <= offset }` with unit normal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlane {
    normal: Point2,
    offset: f64,
}

impl HalfPlane {
    /// Normalizes `normal` (and scales `offset` to match). Rejects normals
    /// shorter than 1e-12: such a half-plane is either everything or nothing.
    pub fn new(normal: Point2, offset: f64) -> Result<Self, GeometryError> {
        let n = normal.norm();
        if !(n > 1e-12) || !offset.is_finite() {
            return Err(GeometryError::DegenerateHalfPlane);
        }
        Ok(HalfPlane {
            normal: normal / n,
            offset: offset / n,
        })
    }

    /// The set of points whose power with respect to site `a` (squared
    /// distance shifted by weight `wa`) does not exceed the power with
    /// respect to site `b`:
    ///
    /// ```text
    /// |y - a|² - wa <= |y - b|² - wb
    ///     <=>  2 <b - a, y> <= |b|² - |a|² - wb + wa
    /// ```
    ///
    /// Errors when the sites coincide (no bisector exists).
    pub fn power_bisector(a: Point2, wa: f64, b: Point2, wb: f64) -> Result<Self, GeometryError> {
        HalfPlane::new((b - a) * 2.0, b.norm_sq() - a.norm_sq() - wb + wa)
    }

    pub fn normal(&self) -> Point2 {
        self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// `<normal, p> - offset`: negative inside, positive outside.
    #[inline]
    pub fn signed_excess(&self, p: Point2) -> f64 {
        self.normal.dot(p) - self.offset
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        self.signed_excess(p) <= tol
    }
}

/// The power diagram (weighted Voronoi / Laguerre decomposition) of a convex
/// domain: cell `i` collects the points of the domain whose weighted squared
/// distance `|y - x_i|² - w_i` is minimal among all sites.
///
/// Properties guaranteed by construction and checked in tests:
///
/// * every cell is convex and contained in the domain;
/// * cells overlap only on their boundaries;
/// * cell areas sum to the domain area (up to clipping roundoff and the
///   area floor under which slivers are dropped);
/// * a cell may be `None` (empty): with strongly uneven weights a site can
///   be "priced out" of the whole domain.
#[derive(Debug, Clone)]
pub struct PowerDiagram {
    sites: Vec<Point2>,
    weights: Vec<f64>,
    cells: Vec<Option<ConvexPolygon>>,
    domain_area: f64,
}

impl PowerDiagram {
    /// Intersects the domain with all pairwise bisector half-planes.
    ///
    /// O(n²) half-plane clips. For the site counts this crate targets
    /// (hundreds) the constant-factor simplicity beats asymptotically
    /// smarter constructions, and the same predicates serve every caller.
    pub fn build(
        domain: &ConvexPolygon,
        sites: &[Point2],
        weights: &[f64],
    ) -> Result<Self, GeometryError> {
        if sites.len() != weights.len() {
            return Err(GeometryError::MismatchedLengths {
                points: sites.len(),
                values: weights.len(),
            });
        }
        if sites.is_empty() {
            return Err(GeometryError::NoSites);
        }
        let floor = domain.area_floor();
        let tol = domain.tol();
        let mut cells = Vec::with_capacity(sites.len());
        for (i, (&xi, &wi)) in sites.iter().zip(weights).enumerate() {
            let mut cell = Some(domain.clone());
            // Radius of a disk around the site that certainly contains the
            // current cell. A bisector whose half-plane keeps that whole
            // disk cannot cut the cell, so the clip may be skipped: the
            // constraint 2⟨xj−xi, y⟩ ≤ |xj|²−|xi|²−wj+wi holds on all of
            // disk(xi, reach) exactly when wj−wi ≤ d(d−2·reach), d = |xj−xi|.
            let mut reach = max_vertex_distance(domain.vertices(), xi);
            for (j, (&xj, &wj)) in sites.iter().zip(weights).enumerate() {
                if i == j {
                    continue;
                }
                let d = ((xj.x - xi.x).powi(2) + (xj.y - xi.y).powi(2)).sqrt();
                if d > 1e-12 && wj - wi <= d * (d - 2.0 * reach) {
                    continue;
                }
                let hp = HalfPlane::power_bisector(xi, wi, xj, wj)?;
                cell = match cell {
                    Some(c) => c.clip_with_floor(&hp, floor, tol),
                    None => break,
                };
                if let Some(c) = &cell {
                    reach = max_vertex_distance(c.vertices(), xi);
                }
            }
            cells.push(cell);
        }
        Ok(PowerDiagram {
            sites: sites.to_vec(),
            weights: weights.to_vec(),
            cells,
            domain_area: domain.area(),
        })
    }

    pub fn sites(&self) -> &[Point2] {
        &self.sites
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn cells(&self) -> &[Option<ConvexPolygon>] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> Option<&ConvexPolygon> {
        self.cells[i].as_ref()
    }

    pub fn domain_area(&self) -> f64 {
        self.domain_area
    }

    /// Cell areas; 0.0 for empty cells.
    pub fn areas(&self) -> Vec<f64> {
        self.cells
            .iter()
            .map(|c| c.as_ref().map_or(0.0, ConvexPolygon::area))
            .collect()
    }

    /// Cell areas divided by the domain area: the mass the uniform measure
    /// on the domain assigns to each cell.
    pub fn area_fractions(&self) -> Vec<f64> {
        self.cells
            .iter()
            .map(|c| c.as_ref().map_or(0.0, ConvexPolygon::area) / self.domain_area)
            .collect()
    }
}

/// Index of the site minimizing `|p - x_i|² - w_i`.
///
/// This is the site whose power cell contains `p`; ties on cell boundaries
/// resolve to the lowest index.
pub fn nearest_power_site(sites: &[Point2], weights: &[f64], p: Point2) -> usize {
    debug_assert_eq!(sites.len(), weights.len());
    let mut best = 0;
    let mut best_val = f64::INFINITY;
    for (i, (&x, &w)) in sites.iter().zip(weights).enumerate() {
        let v = p.dist_sq(x) - w;
        if v < best_val {
            best_val = v;
            best = i;
        }
    }
    best
}

fn max_vertex_distance(vertices: &[Point2], from: Point2) -> f64 {
    vertices
        .iter()
        .map(|v| v.dist_sq(from))
        .fold(0.0f64, f64::max)
        .sqrt()
}
