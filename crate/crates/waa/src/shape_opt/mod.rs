//! Polygon optimization: make the uniform measure on a convex `k`-gon as
//! close as possible (in squared 2-Wasserstein distance, optionally with an
//! area-growth penalty) to a given discrete measure.
//!
//! The objective in the polygon, at the optimal transport potential φ*, is
//!
//! ```text
//! F(Ω) = (1/|Ω|) ∫_Ω f_{φ*}(y) dy  +  Σᵢ φ*ᵢ mᵢ  +  ε·U_m(1_Ω/|Ω|)
//! ```
//!
//! where `f_φ(y) = min_i (|y - x_i|² - φ_i)` is the cell-wise transport
//! cost ([`FPhiField`]) and `U_m` the area penalty ([`renyi_energy`]).
//! Differentiating a region integral in a polygon's vertex gives a boundary
//! integral over the two adjacent edges ([`vertex_gradient_of_region_integral`]);
//! assembling those per the quotient rule gives the full gradient
//! ([`objective_vertex_gradient`]); alternating potential ascent with
//! vertex descent gives the solver ([`solve`]).
//!
//! The descent direction treats φ* as fixed. That is the envelope theorem
//! reading of the underlying min–max problem: at the inner maximizer the
//! φ-sensitivity vanishes to first order, so the partial gradient in the
//! vertices is the total gradient.

mod gradient;
mod solver;

pub use gradient::{
    objective_vertex_gradient, renyi_energy, vertex_gradient_of_region_integral, FPhiField,
    RegionIntegrand,
};
pub use solver::{initialize_polygon, solve, OuterRecord, SolveTrace, SolverConfig};

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::ot::OtError;

#[derive(Debug, Error)]
pub enum ShapeError {
    /// The vertex step produced an invalid polygon at every backtracked
    /// scale; the iterate is pinned against degeneracy.
    #[error("vertex step stayed infeasible after 30 halvings at outer iteration {iteration}")]
    DegeneratePolygon { iteration: usize },
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Transport(#[from] OtError),
}
