//! Minimal deterministic SVG emitter.
//!
//! Figures are built from primitives only (circles, squares, polylines),
//! coordinates are formatted with fixed precision, and nothing
//! time-dependent is written, so the same data always produces the same
//! bytes.

use waa::geometry::Point2;

const CANVAS: f64 = 640.0;
const MARGIN: f64 = 40.0;

/// An SVG canvas mapping a data-space window onto a fixed 640x640 frame
/// with the y axis pointing up.
pub struct Plot {
    x0: f64,
    y0: f64,
    scale: f64,
    body: String,
}

impl Plot {
    /// Creates a canvas framing the axis-aligned window `[lo, hi]`,
    /// expanded by 5% on each side. The window is made square so that
    /// shapes keep their aspect ratio.
    pub fn new(lo: Point2, hi: Point2) -> Plot {
        let w = (hi.x - lo.x).max(1e-9);
        let h = (hi.y - lo.y).max(1e-9);
        let side = w.max(h) * 1.1;
        let cx = 0.5 * (lo.x + hi.x);
        let cy = 0.5 * (lo.y + hi.y);
        Plot {
            x0: cx - side / 2.0,
            y0: cy - side / 2.0,
            scale: (CANVAS - 2.0 * MARGIN) / side,
            body: String::new(),
        }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        let sx = MARGIN + (p.x - self.x0) * self.scale;
        let sy = CANVAS - MARGIN - (p.y - self.y0) * self.scale;
        (sx, sy)
    }

    pub fn circle(&mut self, center: Point2, radius_px: f64, fill: &str, opacity: f64) {
        let (cx, cy) = self.map(center);
        self.body.push_str(&format!(
            "  <circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{radius_px:.2}\" fill=\"{fill}\" fill-opacity=\"{opacity:.2}\"/>\n"
        ));
    }

    pub fn square(&mut self, center: Point2, half_px: f64, fill: &str) {
        let (cx, cy) = self.map(center);
        self.body.push_str(&format!(
            "  <rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{fill}\"/>\n",
            cx - half_px,
            cy - half_px,
            2.0 * half_px,
            2.0 * half_px,
        ));
    }

    fn path_points(&self, points: &[Point2]) -> String {
        let mut s = String::new();
        for (i, p) in points.iter().enumerate() {
            let (x, y) = self.map(*p);
            if i > 0 {
                s.push(' ');
            }
            s.push_str(&format!("{x:.2},{y:.2}"));
        }
        s
    }

    pub fn polyline(&mut self, points: &[Point2], stroke: &str, width: f64) {
        self.body.push_str(&format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width:.2}\"/>\n",
            self.path_points(points)
        ));
    }

    pub fn polygon(&mut self, vertices: &[Point2], stroke: &str, width: f64) {
        self.body.push_str(&format!(
            "  <polygon points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width:.2}\"/>\n",
            self.path_points(vertices)
        ));
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{c}\" height=\"{c}\" viewBox=\"0 0 {c} {c}\">\n  <rect width=\"{c}\" height=\"{c}\" fill=\"white\"/>\n{}</svg>\n",
            self.body,
            c = CANVAS,
        )
    }
}

/// Bounding box of a set of points, ignoring nothing: callers guarantee at
/// least one point.
pub fn bounds(points: impl Iterator<Item = Point2>) -> (Point2, Point2) {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}
