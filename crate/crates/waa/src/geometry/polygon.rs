use serde::{Deserialize, Serialize};

use super::{GeometryError, HalfPlane, Point2};

/// Relative scale of all geometric predicate tolerances.
///
/// Every near-zero test in this module compares against
/// `GEOM_TOL * diameter²` of the polygon at hand, so that the same code works
/// unchanged for data measured in different units. The quantities being
/// tested (cross products, signed areas, squared distances) all carry units
/// of length², which is why the diameter enters squared.
pub const GEOM_TOL: f64 = 1e-12;

/// Relative area floor below which a clipped polygon is treated as empty.
///
/// Expressed as a fraction of the bounding-box area of the polygon being
/// clipped. Cells thinner than this contribute nothing measurable to any
/// integral we compute but would poison later divisions by area.
pub const AREA_FLOOR_REL: f64 = 1e-10;

/// A convex polygon with counterclockwise vertex order.
///
/// Invariants, enforced by [`ConvexPolygon::try_new`]:
///
/// * at least 3 vertices, all coordinates finite;
/// * vertices are in counterclockwise order (positive signed area);
/// * consecutive edge cross products are `> -tol` with
///   `tol = GEOM_TOL * diameter²` — i.e. convex, allowing collinear vertices
///   only within tolerance;
/// * no two consecutive vertices coincide within tolerance;
/// * area at least `AREA_FLOOR_REL` times the bounding-box area.
///
/// Clipping (the only mutating-ish operation; it returns a new polygon)
/// preserves every invariant except that it may produce exactly collinear
/// vertices on the clip line, which the tolerance above admits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon {
    verts: Vec<Point2>,
}

impl ConvexPolygon {
    /// Validates `verts` and builds a polygon. See the type-level invariants.
    pub fn try_new(verts: Vec<Point2>) -> Result<Self, GeometryError> {
        let floor = AREA_FLOOR_REL * bbox_area(&verts);
        Self::try_new_with_floor(verts, floor)
    }

    /// As [`try_new`](Self::try_new) but with an explicit area floor
    /// (absolute units). The solver threads its configured floor through
    /// here so that a degenerating iterate is rejected early.
    pub fn try_new_with_floor(verts: Vec<Point2>, floor: f64) -> Result<Self, GeometryError> {
        if verts.len() < 3 {
            return Err(GeometryError::TooFewVertices(verts.len()));
        }
        if verts.iter().any(|v| !v.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let tol = GEOM_TOL * diameter_sq(&verts);
        let k = verts.len();
        for i in 0..k {
            let p = verts[i];
            let q = verts[(i + 1) % k];
            if p.dist_sq(q) <= tol {
                return Err(GeometryError::DuplicateVertex(i));
            }
        }
        for i in 0..k {
            let a = verts[i];
            let b = verts[(i + 1) % k];
            let c = verts[(i + 2) % k];
            if (b - a).cross(c - b) <= -tol {
                return Err(GeometryError::NotConvex(i));
            }
        }
        let area = signed_area(&verts);
        if area <= 0.0 {
            return Err(GeometryError::NotCounterClockwise);
        }
        if area < floor {
            return Err(GeometryError::AreaBelowFloor { area, floor });
        }
        Ok(ConvexPolygon { verts })
    }

    /// Regular `k`-gon, first vertex at angle `theta0` from `center`.
    pub fn regular(
        k: usize,
        center: Point2,
        radius: f64,
        theta0: f64,
    ) -> Result<Self, GeometryError> {
        let verts = (0..k)
            .map(|i| {
                let t = theta0 + 2.0 * std::f64::consts::PI * i as f64 / k as f64;
                center + Point2::new(radius * t.cos(), radius * t.sin())
            })
            .collect();
        Self::try_new(verts)
    }

    /// Internal constructor for polygons that are convex by construction
    /// (outputs of clipping). Skips the O(k) validation on hot paths.
    pub(crate) fn from_clip(verts: Vec<Point2>) -> Self {
        debug_assert!(verts.len() >= 3);
        debug_assert!(signed_area(&verts) > 0.0);
        ConvexPolygon { verts }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.verts
    }

    /// Number of vertices.
    #[allow(clippy::len_without_is_empty)] // an empty polygon is unrepresentable
    pub fn len(&self) -> usize {
        self.verts.len()
    }

    /// Positive area (shoelace formula).
    pub fn area(&self) -> f64 {
        signed_area(&self.verts)
    }

    /// Area-weighted centroid.
    pub fn centroid(&self) -> Point2 {
        let mut cx = 0.0;
        let mut cy = 0.0;
        let mut a = 0.0;
        let k = self.verts.len();
        for i in 0..k {
            let p = self.verts[i];
            let q = self.verts[(i + 1) % k];
            let w = p.cross(q);
            a += w;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
        Point2::new(cx / (3.0 * a), cy / (3.0 * a))
    }

    /// Axis-aligned bounding box as `(min, max)`.
    pub fn bbox(&self) -> (Point2, Point2) {
        bbox(&self.verts)
    }

    /// Squared diagonal of the bounding box; the length scale for tolerances.
    pub fn diameter_sq(&self) -> f64 {
        diameter_sq(&self.verts)
    }

    /// Absolute predicate tolerance for this polygon (`GEOM_TOL * diam²`).
    pub fn tol(&self) -> f64 {
        GEOM_TOL * self.diameter_sq()
    }

    /// Default area floor for clips of this polygon.
    pub fn area_floor(&self) -> f64 {
        AREA_FLOOR_REL * bbox_area(&self.verts)
    }

    /// `∫_poly |y − center|² dy`, exactly.
    ///
    /// The polygon is fanned into triangles from its centroid and each
    /// triangle is integrated with the three-edge-midpoint rule, which is
    /// exact for quadratics — so the only error here is roundoff.
    pub fn second_moment_about(&self, center: Point2) -> f64 {
        let g = self.centroid();
        let mut acc = 0.0;
        let k = self.verts.len();
        for i in 0..k {
            let p = self.verts[i];
            let q = self.verts[(i + 1) % k];
            let tri_area = 0.5 * (p - g).cross(q - g);
            let m0 = (g + p) * 0.5;
            let m1 = (p + q) * 0.5;
            let m2 = (q + g) * 0.5;
            acc += tri_area / 3.0 * (m0.dist_sq(center) + m1.dist_sq(center) + m2.dist_sq(center));
        }
        acc
    }

    /// Clips by a half-plane, using this polygon's own default area floor.
    /// Returns `None` when the intersection is empty or below the floor.
    pub fn clip(&self, hp: &HalfPlane) -> Option<ConvexPolygon> {
        self.clip_with_floor(hp, self.area_floor(), self.tol())
    }

    /// Sutherland–Hodgman clip against a single half-plane.
    ///
    /// `floor` and `tol` are passed explicitly so that a chain of clips (as
    /// in power-diagram construction) measures every cell against the scale
    /// of the *original* domain, not of the shrinking intermediate cells.
    pub fn clip_with_floor(&self, hp: &HalfPlane, floor: f64, tol: f64) -> Option<ConvexPolygon> {
        let mut out: Vec<Point2> = Vec::with_capacity(self.verts.len() + 2);
        clip_in_place(&self.verts, hp, tol, &mut out);
        if out.len() < 3 || signed_area(&out) < floor {
            return None;
        }
        Some(ConvexPolygon::from_clip(out))
    }

    /// True when `p` lies inside or on the boundary (within tolerance).
    pub fn contains(&self, p: Point2) -> bool {
        let tol = self.tol();
        let k = self.verts.len();
        (0..k).all(|i| {
            let a = self.verts[i];
            let b = self.verts[(i + 1) % k];
            (b - a).cross(p - a) >= -tol
        })
    }

    /// Edge iterator: `(v_i, v_{i+1})` with wraparound.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let k = self.verts.len();
        (0..k).map(move |i| (self.verts[i], self.verts[(i + 1) % k]))
    }

    /// Unit outward normal of edge `i` (from vertex `i` to vertex `i+1`).
    /// For counterclockwise order the outward normal of direction `(dx, dy)`
    /// is `(dy, -dx)`, normalized.
    pub fn outward_normal(&self, i: usize) -> Point2 {
        let k = self.verts.len();
        let d = self.verts[(i + 1) % k] - self.verts[i];
        Point2::new(d.y, -d.x) / d.norm()
    }

    pub fn translated(&self, v: Point2) -> ConvexPolygon {
        ConvexPolygon {
            verts: self.verts.iter().map(|&p| p + v).collect(),
        }
    }

    /// Counterclockwise rotation of every vertex about `center`.
    pub fn rotated_about(&self, center: Point2, angle: f64) -> ConvexPolygon {
        ConvexPolygon {
            verts: self
                .verts
                .iter()
                .map(|&p| center + (p - center).rotated(angle))
                .collect(),
        }
    }
}

/// One Sutherland–Hodgman pass: clips the counterclockwise vertex list
/// `input` by `hp` into `out` (cleared first), dropping consecutive
/// duplicates within `tol`. The hot loops of the crate call this directly
/// with reused buffers; it never allocates beyond `out`'s capacity growth.
pub(crate) fn clip_in_place(input: &[Point2], hp: &HalfPlane, tol: f64, out: &mut Vec<Point2>) {
    out.clear();
    let k = input.len();
    for i in 0..k {
        let a = input[i];
        let b = input[(i + 1) % k];
        let da = hp.signed_excess(a);
        let db = hp.signed_excess(b);
        let a_in = da <= tol;
        let b_in = db <= tol;
        if a_in {
            out.push(a);
        }
        // A genuine sign change produces one crossing point. When an
        // endpoint sits within tolerance of the line we keep the endpoint
        // itself and skip the (numerically ill-posed) intersection.
        if a_in != b_in && (da - db).abs() > f64::EPSILON * (da.abs() + db.abs()) {
            let t = da / (da - db);
            if t > 0.0 && t < 1.0 {
                out.push(a + (b - a) * t);
            }
        }
    }
    dedup_consecutive(out, tol);
}

pub(crate) fn signed_area(verts: &[Point2]) -> f64 {
    let k = verts.len();
    let mut a = 0.0;
    for i in 0..k {
        a += verts[i].cross(verts[(i + 1) % k]);
    }
    0.5 * a
}

fn bbox(verts: &[Point2]) -> (Point2, Point2) {
    let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for v in verts {
        min.x = min.x.min(v.x);
        min.y = min.y.min(v.y);
        max.x = max.x.max(v.x);
        max.y = max.y.max(v.y);
    }
    (min, max)
}

fn bbox_area(verts: &[Point2]) -> f64 {
    let (min, max) = bbox(verts);
    (max.x - min.x) * (max.y - min.y)
}

fn diameter_sq(verts: &[Point2]) -> f64 {
    let (min, max) = bbox(verts);
    (max - min).norm_sq()
}

fn dedup_consecutive(verts: &mut Vec<Point2>, tol: f64) {
    if verts.len() < 2 {
        return;
    }
    let mut keep: Vec<Point2> = Vec::with_capacity(verts.len());
    for &v in verts.iter() {
        if keep.last().is_none_or(|&last| last.dist_sq(v) > tol) {
            keep.push(v);
        }
    }
    while keep.len() >= 2 && keep.first().unwrap().dist_sq(*keep.last().unwrap()) <= tol {
        keep.pop();
    }
    *verts = keep;
}
