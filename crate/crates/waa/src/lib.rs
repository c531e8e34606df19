//! Wasserstein archetypal analysis (WAA).
//!
//! This crate summarizes a weighted point cloud `mu` by the *uniform
//! probability measure on a convex polygon*: it searches over convex `k`-gons
//! `Omega` for the one minimizing the 2-Wasserstein distance
//!
//! ```text
//!     minimize  W2(mu, U(Omega)),      U(Omega) = uniform measure on Omega,
//!     over convex k-gons Omega
//! ```
//!
//! optionally regularized by a Rényi entropy term `eps * U_m(Omega)` that
//! penalizes small area. The polygon plays the role of a continuous family of
//! archetypes: its vertices are extreme synthetic exemplars, and every data
//! point is (in transport terms) a mixture of them.
//!
//! # Module map
//!
//! | module      | contents                                                          |
//! |-------------|-------------------------------------------------------------------|
//! | [`geometry`]| convex polygons, half-plane clipping, power diagrams, moments     |
//! | [`ot`]      | discrete measures, the semidiscrete dual, ascent, an exact solver |
//! | [`shape_opt`]| boundary (shape) gradients and the alternating solver            |
//! | [`oned`]    | the closed-form solution on the real line                         |
//! | [`data`]    | binning, samplers, PCA, k-means, smoothing, CSV ingestion         |
//!
//! # Quick start
//!
//! The 1-d problem has a closed form — the optimal interval is a linear
//! functional of two moments of the data:
//!
//! ```
//! use waa::oned::{solve_1d, Empirical1D};
//!
//! // A symmetric three-atom measure on the line.
//! let mu = Empirical1D::from_samples(&[-1.0, 0.0, 1.0]).unwrap();
//! let sol = solve_1d(&mu).unwrap();
//! assert!((sol.interval.midpoint()).abs() < 1e-12); // symmetry is preserved
//! ```
//!
//! In 2-d the solver alternates a concave dual ascent (computing the
//! transport cost to the current polygon through a power diagram) with a
//! gradient step on the polygon vertices:
//!
//! ```
//! use waa::ot::DiscreteMeasure;
//! use waa::shape_opt::{initialize_polygon, solve, SolverConfig};
//!
//! let pts = [(-1.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.0, -1.0)];
//! let mu = DiscreteMeasure::uniform_on_points(
//!     &pts.map(|(x, y)| waa::geometry::Point2::new(x, y)),
//! )
//! .unwrap();
//! let cfg = SolverConfig { k: 3, max_outer: 40, ..SolverConfig::default() };
//! let omega0 = initialize_polygon(&mu, cfg.k, cfg.seed);
//! let trace = solve(&mu, &omega0, &cfg).unwrap();
//! assert_eq!(trace.final_polygon.len(), 3);
//! ```

pub mod data;
pub mod geometry;
pub mod oned;
pub mod ot;
pub mod shape_opt;
