//! Line integrals along polygon edges.
//!
//! The shape gradient of a region integral reduces to boundary integrals of
//! `g(x) * F(x)` where `F` is affine along the edge and `g` is smooth except
//! across power-cell boundaries, where it switches between quadratics. We
//! therefore integrate per smooth piece with a 2-point Gauss–Legendre rule,
//! which is exact for cubics — and (quadratic `g`) × (affine `F`) is a cubic
//! in the arclength parameter. No quadrature error enters anywhere.

use super::Point2;

/// Gauss–Legendre nodes for two points on [-1, 1] (weights are both 1).
const GAUSS2: f64 = 0.577_350_269_189_625_8; // 1/sqrt(3)

/// Parameters `t` in (0, 1) at which some pairwise power bisector of
/// `(sites, weights)` crosses the segment `p0 → p1`, sorted and deduplicated.
///
/// Between consecutive crossings the minimizing site — and hence the
/// quadratic expression of the power cost — cannot change, so these are
/// exactly the smoothness breakpoints needed by [`integrate_edge_weighted`].
pub fn bisector_crossings(sites: &[Point2], weights: &[f64], p0: Point2, p1: Point2) -> Vec<f64> {
    let d = p1 - p0;
    let n = sites.len();
    let mut ts = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            // 2 <x_j - x_i, y(t)> = |x_j|² - |x_i|² - w_j + w_i
            let a = (sites[j] - sites[i]) * 2.0;
            let rhs = sites[j].norm_sq() - sites[i].norm_sq() - weights[j] + weights[i];
            let denom = a.dot(d);
            if denom.abs() < 1e-300 {
                continue; // bisector parallel to the edge
            }
            let t = (rhs - a.dot(p0)) / denom;
            if t > 1e-12 && t < 1.0 - 1e-12 {
                ts.push(t);
            }
        }
    }
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    ts
}

/// `∫ over the segment p0 → p1 of g(x(t)) · (w0 + (w1 - w0) t) ds`, split at
/// the given breakpoints (sorted, strictly inside (0, 1)).
///
/// `g` must be polynomial of degree ≤ 2 on each piece; the affine factor
/// interpolates `w0` at `p0` and `w1` at `p1`. Exact up to roundoff.
pub fn integrate_edge_weighted(
    p0: Point2,
    p1: Point2,
    breakpoints: &[f64],
    g: impl Fn(Point2) -> f64,
    w0: f64,
    w1: f64,
) -> f64 {
    let len = p1.dist(p0);
    let mut acc = 0.0;
    let mut lo = 0.0;
    let mut next = breakpoints.iter().copied().chain(std::iter::once(1.0));
    loop {
        let hi = match next.next() {
            Some(t) => t,
            None => break,
        };
        debug_assert!((0.0..=1.0).contains(&hi) && hi >= lo);
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for node in [mid - half * GAUSS2, mid + half * GAUSS2] {
            let x = p0 + (p1 - p0) * node;
            let w = w0 + (w1 - w0) * node;
            acc += half * g(x) * w;
        }
        lo = hi;
        if lo >= 1.0 {
            break;
        }
    }
    acc * len
}
