//! Planar geometry for transport on convex polygons: points, convex
//! polygons with validated invariants, half-plane clipping, power diagrams,
//! and the exact edge/area integrals the rest of the crate is built on.
//!
//! Robustness strategy: every predicate uses an absolute tolerance scaled by
//! the squared diameter of the polygon involved ([`polygon::GEOM_TOL`]), and
//! clipped slivers below a relative area floor are dropped rather than kept
//! as near-degenerate polygons. Simple O(k) / O(n²) algorithms are preferred
//! throughout; the site and vertex counts in this crate never justify the
//! fragility of asymptotically faster constructions.

mod edge;
mod point;
mod polygon;
mod power;

pub use edge::{bisector_crossings, integrate_edge_weighted};
pub use point::Point2;
pub(crate) use polygon::{clip_in_place, signed_area};
pub use polygon::{ConvexPolygon, AREA_FLOOR_REL, GEOM_TOL};
pub use power::{nearest_power_site, HalfPlane, PowerDiagram};

use thiserror::Error;

/// Failures of geometric constructions and validations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("vertices {0} and {0}+1 coincide within tolerance")]
    DuplicateVertex(usize),
    #[error("vertex sequence turns clockwise at vertex {0}; polygon not convex")]
    NotConvex(usize),
    #[error("vertices are in clockwise order (negative signed area)")]
    NotCounterClockwise,
    #[error("polygon area {area:.3e} below floor {floor:.3e}")]
    AreaBelowFloor { area: f64, floor: f64 },
    #[error("half-plane normal too short or offset not finite")]
    DegenerateHalfPlane,
    #[error("length mismatch: {points} points vs {values} values")]
    MismatchedLengths { points: usize, values: usize },
    #[error("a power diagram needs at least one site")]
    NoSites,
}
