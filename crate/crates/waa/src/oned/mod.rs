//! Archetypal analysis on the real line, where the problem is solvable in
//! closed form.
//!
//! In one dimension a "convex polygon" is an interval `[a, b]`, and the
//! squared 2-Wasserstein distance from a probability measure `mu` to the
//! uniform measure on `[a, b]` is an explicit *quadratic* in `(a, b)`:
//!
//! ```text
//!     J(a, b) = (2a² + 2ab + 2b²)/6 - 2·((C0 - C1)·a + C1·b) + C2
//! ```
//!
//! built from three moments of `mu` (`F` is its CDF):
//!
//! ```text
//!     C0 = ∫ x dmu,    C1 = ∫ x F(x) dmu,    C2 = ∫ x² dmu.
//! ```
//!
//! Minimizing the quadratic gives the optimal interval directly:
//!
//! ```text
//!     a* = 4·C0 - 6·C1,        b* = 6·C1 - 2·C0.
//! ```
//!
//! `b* - a* = 12·C1 - 6·C0 > 0` for every measure that is not a single
//! Dirac mass (a Chebyshev-correlation inequality), so the solution is a
//! genuine interval exactly when the input carries any spread at all.
//!
//! For an atom of mass `m` at `x`, the integrand `F` jumps; the convention
//! used throughout is the *mid-CDF* value `F(x⁻) + m/2`. This makes the
//! discrete `C1` agree exactly with the quantile-function integral
//! `∫₀¹ t F⁻¹(t) dt`, which is the form the derivation of `J` relies on.
//!
//! ```
//! use waa::oned::{solve_1d, Empirical1D};
//!
//! // Two equal atoms at 0 and 1.
//! let mu = Empirical1D::from_samples(&[0.0, 1.0]).unwrap();
//! let sol = solve_1d(&mu).unwrap();
//! // C0 = 1/2, C1 = 3/8: the optimal interval is [-1/4, 5/4].
//! assert!((sol.interval.a() - -0.25).abs() < 1e-12);
//! assert!((sol.interval.b() - 1.25).abs() < 1e-12);
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OnedError {
    /// All mass sits at one point; the optimal interval degenerates.
    #[error("measure is a single Dirac mass; optimal interval degenerates to a point")]
    DegenerateMeasure,
    #[error("interval endpoints must satisfy a < b, got [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("empirical measure needs at least one atom")]
    NoAtoms,
    #[error("sample values must be finite")]
    NonFinite,
    #[error("masses must be positive and finite")]
    InvalidMass,
    #[error("masses must sum to 1, got {0}")]
    MassNotNormalized(f64),
    #[error("points and masses have different lengths: {points} vs {masses}")]
    MismatchedLengths { points: usize, masses: usize },
}

/// A nonempty open interval `(a, b)`, `a < b` strictly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self, OnedError> {
        if !a.is_finite() || !b.is_finite() || !(a < b) {
            return Err(OnedError::InvalidInterval { a, b });
        }
        Ok(Interval { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }
}

/// A purely atomic probability measure on the line: sorted distinct support
/// points with positive masses summing to 1, and a right-continuous CDF.
#[derive(Debug, Clone, PartialEq)]
pub struct Empirical1D {
    xs: Vec<f64>,
    ms: Vec<f64>,
    /// cum[i] = total mass at or left of xs[i]; cum.last() == 1 exactly.
    cum: Vec<f64>,
}

impl Empirical1D {
    /// Equal-weight empirical measure of the samples. Exact duplicates are
    /// merged (their masses add up).
    pub fn from_samples(samples: &[f64]) -> Result<Self, OnedError> {
        let m = 1.0 / samples.len() as f64;
        Self::from_weighted(samples, &vec![m; samples.len()])
    }

    /// Weighted atomic measure. Masses must be positive and sum to 1 within
    /// 1e-10 (they are renormalized exactly afterwards).
    pub fn from_weighted(points: &[f64], masses: &[f64]) -> Result<Self, OnedError> {
        if points.len() != masses.len() {
            return Err(OnedError::MismatchedLengths {
                points: points.len(),
                masses: masses.len(),
            });
        }
        if points.is_empty() {
            return Err(OnedError::NoAtoms);
        }
        if points.iter().any(|x| !x.is_finite()) {
            return Err(OnedError::NonFinite);
        }
        if masses.iter().any(|m| !m.is_finite() || *m <= 0.0) {
            return Err(OnedError::InvalidMass);
        }
        let total: f64 = masses.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(OnedError::MassNotNormalized(total));
        }

        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&i, &j| points[i].partial_cmp(&points[j]).unwrap());
        let mut xs: Vec<f64> = Vec::with_capacity(points.len());
        let mut ms: Vec<f64> = Vec::with_capacity(points.len());
        for i in order {
            if xs.last() == Some(&points[i]) {
                *ms.last_mut().unwrap() += masses[i];
            } else {
                xs.push(points[i]);
                ms.push(masses[i]);
            }
        }
        // Renormalize so the CDF tops out at exactly 1.0; downstream quantile
        // merging relies on both measures sharing the endpoint.
        for m in &mut ms {
            *m /= total;
        }
        let mut cum = Vec::with_capacity(ms.len());
        let mut acc = 0.0;
        for m in &ms {
            acc += m;
            cum.push(acc);
        }
        *cum.last_mut().unwrap() = 1.0;
        Ok(Empirical1D { xs, ms, cum })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructors reject empty support
    }

    pub fn support(&self) -> &[f64] {
        &self.xs
    }

    pub fn masses(&self) -> &[f64] {
        &self.ms
    }

    /// Right-continuous CDF evaluated at `x`.
    pub fn cdf(&self, x: f64) -> f64 {
        let i = self.xs.partition_point(|&p| p <= x);
        if i == 0 {
            0.0
        } else {
            self.cum[i - 1]
        }
    }

    /// Generalized inverse CDF: the smallest support point whose cumulative
    /// mass reaches `t` (for `t` in `(0, 1]`).
    pub fn quantile(&self, t: f64) -> f64 {
        let i = self.cum.partition_point(|&c| c < t);
        self.xs[i.min(self.xs.len() - 1)]
    }

    /// `C0 = ∫ x dmu`.
    pub fn moment_c0(&self) -> f64 {
        self.xs.iter().zip(&self.ms).map(|(x, m)| x * m).sum()
    }

    /// `C1 = ∫ x F(x) dmu` with the mid-CDF convention at atoms: an atom of
    /// mass `m` at `x` contributes `m · x · (F(x⁻) + m/2)`. Equals the
    /// quantile-side integral `∫₀¹ t F⁻¹(t) dt` exactly.
    pub fn moment_c1(&self) -> f64 {
        let mut below = 0.0;
        let mut acc = 0.0;
        for (x, m) in self.xs.iter().zip(&self.ms) {
            acc += m * x * (below + 0.5 * m);
            below += m;
        }
        acc
    }

    /// `C2 = ∫ x² dmu`.
    pub fn moment_c2(&self) -> f64 {
        self.xs.iter().zip(&self.ms).map(|(x, m)| x * x * m).sum()
    }
}

/// Result of the closed-form 1-d solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Solution1D {
    pub interval: Interval,
    /// `W2(mu, uniform on the interval)`.
    pub w2: f64,
}

/// Minimizes `W2(mu, uniform[a, b])²` over intervals, in closed form:
/// `a* = 4·C0 - 6·C1`, `b* = 6·C1 - 2·C0`.
pub fn solve_1d(mu: &Empirical1D) -> Result<Solution1D, OnedError> {
    if mu.len() == 1 {
        return Err(OnedError::DegenerateMeasure);
    }
    let c0 = mu.moment_c0();
    let c1 = mu.moment_c1();
    let a = 4.0 * c0 - 6.0 * c1;
    let b = 6.0 * c1 - 2.0 * c0;
    let interval = Interval::new(a, b).map_err(|_| OnedError::DegenerateMeasure)?;
    // Report the distance through the per-atom quantile integral rather
    // than the moment quadratic: near the optimum the quadratic subtracts
    // O(C2)-sized terms that agree to ~1e-12, so accumulated rounding in
    // the moments would swamp the tiny residual it evaluates to.
    let w2 = w2_1d_to_uniform(mu, &interval);
    Ok(Solution1D { interval, w2 })
}

/// `W2(mu, uniform[a, b])²` via the explicit quadratic; exact.
pub fn objective_1d(mu: &Empirical1D, iv: &Interval) -> f64 {
    let (a, b) = (iv.a(), iv.b());
    let c0 = mu.moment_c0();
    let c1 = mu.moment_c1();
    let c2 = mu.moment_c2();
    (2.0 * a * a + 2.0 * a * b + 2.0 * b * b) / 6.0 - 2.0 * ((c0 - c1) * a + c1 * b) + c2
}

/// Exact `W2` between two atomic measures on the line.
///
/// Both quantile functions are step functions; on each piece of the common
/// refinement of their jump grids the integrand `|F⁻¹ - G⁻¹|²` is constant.
pub fn w2_1d(mu: &Empirical1D, nu: &Empirical1D) -> f64 {
    let mut acc = 0.0;
    let mut t = 0.0;
    let (mut i, mut j) = (0, 0);
    while t < 1.0 {
        let ci = mu.cum[i];
        let cj = nu.cum[j];
        let next = ci.min(cj);
        let d = mu.xs[i] - nu.xs[j];
        acc += d * d * (next - t);
        t = next;
        if ci <= next && i + 1 < mu.xs.len() {
            i += 1;
        }
        if cj <= next && j + 1 < nu.xs.len() {
            j += 1;
        }
        if next >= 1.0 {
            break;
        }
    }
    acc.max(0.0).sqrt()
}

/// Exact `W2` between an atomic measure and the uniform measure on an
/// interval. The uniform quantile is affine, so each atom contributes a
/// closed-form integral `∫ (x_i - a - (b-a)·t)² dt` over its quantile slab.
pub fn w2_1d_to_uniform(mu: &Empirical1D, iv: &Interval) -> f64 {
    let (a, b) = (iv.a(), iv.b());
    let width = b - a;
    let mut acc = 0.0;
    let mut lo = 0.0;
    for (x, hi) in mu.xs.iter().zip(&mu.cum) {
        // u(t) = x - a - (b-a) t; ∫ u² dt = (u(lo)³ - u(hi)³) / (3 (b-a))
        let ulo = x - a - width * lo;
        let uhi = x - a - width * hi;
        acc += (ulo * ulo * ulo - uhi * uhi * uhi) / (3.0 * width);
        lo = *hi;
    }
    acc.max(0.0).sqrt()
}
