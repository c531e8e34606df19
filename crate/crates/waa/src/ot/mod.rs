//! Optimal transport between discrete measures and uniform measures on
//! convex polygons.
//!
//! Two independent routes to the same quantity live here deliberately:
//!
//! * [`dual_ascent`] / [`w2_semidiscrete`] — the semidiscrete dual solved
//!   through power diagrams; this is the route the shape optimizer uses.
//! * [`w2_squared_exact`] — an exact discrete–discrete transportation
//!   simplex, used as a reference oracle in tests and by the landscape
//!   scanner, where the target measure is itself a quantization.
//!
//! Keeping both routes honest against each other is a core part of the
//! crate's test strategy; do not "simplify" one by calling the other.

mod dual;
mod exact;
mod measure;

pub use dual::{
    dual_ascent, dual_gradient, dual_objective, w2_semidiscrete, AscentConfig, DualAscentReport,
    DualPotential,
};
pub use exact::{w2_squared_exact, MAX_EXACT_PAIRS};
pub use measure::{Dimension, DiscreteMeasure};

use thiserror::Error;

/// Failures in measure construction and transport solves.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OtError {
    #[error("a discrete measure needs at least one atom")]
    NoAtoms,
    #[error("length mismatch: {points} points vs {masses} masses")]
    MismatchedLengths { points: usize, masses: usize },
    #[error("non-finite coordinate or value")]
    NonFinite,
    #[error("masses must be positive and finite")]
    InvalidMass,
    #[error("masses must sum to 1, got {0}")]
    MassNotNormalized(f64),
    #[error("duplicate atom; merge coincident points upstream")]
    DuplicateAtom,
    #[error("instance has {pairs} source-target pairs, above the exact-solver limit {limit}")]
    SizeLimit { pairs: usize, limit: usize },
    #[error("exact transport solver failed: {0}")]
    ExactSolver(String),
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
}
