use serde::{Deserialize, Serialize};

use super::OtError;
use crate::geometry::Point2;

/// Intrinsic dimension of a discrete measure's support.
///
/// One-dimensional measures are embedded in the plane on the x-axis so that
/// the planar machinery applies uniformly; the tag records the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dimension {
    One,
    Two,
}

/// A finitely supported probability measure: distinct atoms with positive
/// masses summing to 1 (within 1e-10 at construction; stored as given).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteMeasure {
    points: Vec<Point2>,
    masses: Vec<f64>,
    dim: Dimension,
}

impl DiscreteMeasure {
    /// Planar measure from atoms and masses.
    pub fn new(points: &[Point2], masses: &[f64]) -> Result<Self, OtError> {
        Self::build(points.to_vec(), masses.to_vec(), Dimension::Two)
    }

    /// Planar measure with equal masses `1/n`.
    pub fn uniform_on_points(points: &[Point2]) -> Result<Self, OtError> {
        let n = points.len();
        Self::new(points, &vec![1.0 / n as f64; n])
    }

    /// Measure on the line, embedded on the x-axis of the plane.
    pub fn new_1d(xs: &[f64], masses: &[f64]) -> Result<Self, OtError> {
        let points = xs.iter().map(|&x| Point2::new(x, 0.0)).collect();
        Self::build(points, masses.to_vec(), Dimension::One)
    }

    fn build(points: Vec<Point2>, masses: Vec<f64>, dim: Dimension) -> Result<Self, OtError> {
        if points.is_empty() {
            return Err(OtError::NoAtoms);
        }
        if points.len() != masses.len() {
            return Err(OtError::MismatchedLengths {
                points: points.len(),
                masses: masses.len(),
            });
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(OtError::NonFinite);
        }
        if masses.iter().any(|m| !m.is_finite() || *m <= 0.0) {
            return Err(OtError::InvalidMass);
        }
        let total: f64 = masses.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(OtError::MassNotNormalized(total));
        }
        // Duplicate atoms are a modelling error (merge them upstream); with
        // hundreds of atoms the quadratic scan is immaterial.
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&i, &j| {
            (points[i].x, points[i].y)
                .partial_cmp(&(points[j].x, points[j].y))
                .unwrap()
        });
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                return Err(OtError::DuplicateAtom);
            }
        }
        Ok(DiscreteMeasure {
            points,
            masses,
            dim,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructors reject empty support
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    /// Mass-weighted mean of the atoms.
    pub fn mean(&self) -> Point2 {
        let mut acc = Point2::ZERO;
        for (p, m) in self.points.iter().zip(&self.masses) {
            acc += *p * *m;
        }
        acc
    }

    /// Weighted covariance matrix as `[[xx, xy], [xy, yy]]`.
    pub fn covariance(&self) -> [[f64; 2]; 2] {
        let mean = self.mean();
        let (mut xx, mut xy, mut yy) = (0.0, 0.0, 0.0);
        for (p, m) in self.points.iter().zip(&self.masses) {
            let d = *p - mean;
            xx += m * d.x * d.x;
            xy += m * d.x * d.y;
            yy += m * d.y * d.y;
        }
        [[xx, xy], [xy, yy]]
    }

    /// Root of the total variance `∑ mᵢ |xᵢ - mean|²`: a scalar spread scale.
    pub fn std_dev(&self) -> f64 {
        let cov = self.covariance();
        (cov[0][0] + cov[1][1]).sqrt()
    }

    /// Largest eigenvalue of the covariance matrix (closed form, symmetric 2×2).
    pub fn covariance_top_eigenvalue(&self) -> f64 {
        let [[a, b], [_, c]] = self.covariance();
        0.5 * (a + c) + (0.25 * (a - c) * (a - c) + b * b).sqrt()
    }

    pub fn translated(&self, v: Point2) -> DiscreteMeasure {
        DiscreteMeasure {
            points: self.points.iter().map(|&p| p + v).collect(),
            masses: self.masses.clone(),
            dim: self.dim,
        }
    }

    pub fn rotated_about(&self, center: Point2, angle: f64) -> DiscreteMeasure {
        DiscreteMeasure {
            points: self
                .points
                .iter()
                .map(|&p| center + (p - center).rotated(angle))
                .collect(),
            masses: self.masses.clone(),
            dim: Dimension::Two,
        }
    }
}
