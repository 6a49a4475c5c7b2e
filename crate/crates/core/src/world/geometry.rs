//! Planar geometry primitives for collision checks.

use crate::error::{Error, Result};

pub type Point = [f64; 2];

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Twice the signed area of the triangle `abc`.
pub fn orient(a: Point, b: Point, c: Point) -> f64 {
    cross(sub(b, a), sub(c, a))
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
}

/// Closed-segment intersection test, including touching and collinear overlap.
pub fn segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = sub(b, a);
    let len2 = dot(ab, ab);
    let t = if len2 > 0.0 { (dot(sub(p, a), ab) / len2).clamp(0.0, 1.0) } else { 0.0 };
    let c = [a[0] + t * ab[0], a[1] + t * ab[1]];
    let d = sub(p, c);
    dot(d, d).sqrt()
}

/// Distance between two closed segments; zero when they intersect.
pub fn segment_segment_distance(p1: Point, p2: Point, q1: Point, q2: Point) -> f64 {
    if segments_intersect(p1, p2, q1, q2) {
        return 0.0;
    }
    point_segment_distance(p1, q1, q2)
        .min(point_segment_distance(p2, q1, q2))
        .min(point_segment_distance(q1, p1, p2))
        .min(point_segment_distance(q2, p1, p2))
}

/// Simple polygon with at least three vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
    lo: Point,
    hi: Point,
}

impl Polygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidScene(format!("polygon needs at least 3 vertices, got {}", vertices.len())));
        }
        if vertices.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidScene("polygon vertices must be finite".into()));
        }
        let n = vertices.len();
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                let (c, d) = (vertices[j], vertices[(j + 1) % n]);
                if !adjacent && segments_intersect(a, b, c, d) {
                    return Err(Error::InvalidScene(format!("polygon edges {i} and {j} intersect")));
                }
            }
        }
        let area2: f64 = (0..n).map(|i| cross(vertices[i], vertices[(i + 1) % n])).sum();
        if area2 == 0.0 {
            return Err(Error::InvalidScene("polygon has zero area".into()));
        }
        let lo = vertices.iter().fold([f64::INFINITY; 2], |m, p| [m[0].min(p[0]), m[1].min(p[1])]);
        let hi = vertices.iter().fold([f64::NEG_INFINITY; 2], |m, p| [m[0].max(p[0]), m[1].max(p[1])]);
        Ok(Self { vertices, lo, hi })
    }

    /// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
    pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        Self::new(vec![[x0, y0], [x1, y0], [x1, y1], [x0, y1]])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point {
        let (mut a, mut cx, mut cy) = (0.0, 0.0, 0.0);
        for (p, q) in self.edges() {
            let c = cross(p, q);
            a += c;
            cx += (p[0] + q[0]) * c;
            cy += (p[1] + q[1]) * c;
        }
        [cx / (3.0 * a), cy / (3.0 * a)]
    }

    /// Bounding-box distance lower bound; zero inside the box.
    fn box_distance(&self, p: Point) -> f64 {
        let dx = (self.lo[0] - p[0]).max(p[0] - self.hi[0]).max(0.0);
        let dy = (self.lo[1] - p[1]).max(p[1] - self.hi[1]).max(0.0);
        dx.hypot(dy)
    }

    /// Even-odd ray casting.
    pub fn contains(&self, p: Point) -> bool {
        if self.box_distance(p) > 0.0 {
            return false;
        }
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
                if p[0] < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn boundary_distance(&self, p: Point) -> f64 {
        self.edges().map(|(a, b)| point_segment_distance(p, a, b)).fold(f64::INFINITY, f64::min)
    }

    /// Distance from `p` to the polygon, negative inside. Returns `cap` early
    /// when the polygon is certainly further than `cap`.
    pub fn signed_distance(&self, p: Point, cap: f64) -> f64 {
        if self.box_distance(p) >= cap {
            return cap;
        }
        let d = self.boundary_distance(p);
        if self.contains(p) {
            -d
        } else {
            d.min(cap)
        }
    }

    /// Whether a disc of radius `r` centred at `p` overlaps the polygon.
    pub fn overlaps_disc(&self, p: Point, r: f64) -> bool {
        if self.box_distance(p) > r {
            return false;
        }
        self.contains(p) || (r > 0.0 && self.boundary_distance(p) < r)
    }

    /// Distance from the segment `ab` to the polygon, zero on contact. Returns
    /// `cap` early when the polygon is certainly further than `cap`.
    pub fn segment_distance(&self, a: Point, b: Point, cap: f64) -> f64 {
        let dx = (self.lo[0] - a[0].max(b[0])).max(a[0].min(b[0]) - self.hi[0]).max(0.0);
        let dy = (self.lo[1] - a[1].max(b[1])).max(a[1].min(b[1]) - self.hi[1]).max(0.0);
        if dx.hypot(dy) >= cap {
            return cap;
        }
        if self.contains(a) {
            return 0.0;
        }
        self.edges().map(|(p, q)| segment_segment_distance(a, b, p, q)).fold(cap, f64::min)
    }

    pub fn intersects_segment(&self, a: Point, b: Point) -> bool {
        let (slo, shi) = ([a[0].min(b[0]), a[1].min(b[1])], [a[0].max(b[0]), a[1].max(b[1])]);
        if shi[0] < self.lo[0] || slo[0] > self.hi[0] || shi[1] < self.lo[1] || slo[1] > self.hi[1] {
            return false;
        }
        self.contains(a) || self.contains(b) || self.edges().any(|(p, q)| segments_intersect(a, b, p, q))
    }
}
