// Copyright 2026 The earmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Geometric primitives.
//!
//! Every decision that affects the validity of a mesh (orientation,
//! containment, simplicity, convexity) goes through the exact [`orient2d`]
//! predicate. Angles are plain floating point and only ever used to rank
//! candidates.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::{PI, TAU};
use core::fmt;
use core::ops::{Add, Mul, Sub};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("polygon needs at least 3 vertices, got {len}")]
    TooFewVertices { len: usize },
    #[error("vertex {index} equals its successor")]
    RepeatedVertex { index: usize },
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("polygon has zero signed area")]
    ZeroArea,
}

/// A point in the plane with finite coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    /// Panics on non-finite input; use [`Point2::try_new`] for untrusted data.
    pub fn new(x: f64, y: f64) -> Self {
        Self::try_new(x, y).expect("non-finite coordinate")
    }

    pub fn try_new(x: f64, y: f64) -> Result<Self, GeomError> {
        if x.is_finite() && y.is_finite() {
            Ok(Point2 { x, y })
        } else {
            Err(GeomError::NonFinite)
        }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    /// `self + t * (other - self)`.
    pub fn lerp(self, other: Point2, t: f64) -> Point2 {
        Point2 {
            x: self.x + t * (other.x - self.x),
            y: self.y + t * (other.y - self.y),
        }
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2 {
            x: self.x + rhs.x,
            y: self.y + rhs.y,
        }
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2 {
            x: self.x - rhs.x,
            y: self.y - rhs.y,
        }
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2 {
            x: self.x * rhs,
            y: self.y * rhs,
        }
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Exact sign of `(b - a) x (c - a)`.
pub fn orient2d(a: Point2, b: Point2, c: Point2) -> Orientation {
    let det = robust::orient2d(
        robust::Coord { x: a.x, y: a.y },
        robust::Coord { x: b.x, y: b.y },
        robust::Coord { x: c.x, y: c.y },
    );
    if det > 0.0 {
        Orientation::Ccw
    } else if det < 0.0 {
        Orientation::Cw
    } else {
        Orientation::Collinear
    }
}

/// Containment of `p` in triangle `(a, b, c)`, decided by three exact
/// orientation tests. With `closed` set, points on the boundary count as
/// inside. Works for either winding of the triangle.
pub fn point_in_triangle(
    p: Point2,
    a: Point2,
    b: Point2,
    c: Point2,
    closed: bool,
) -> Result<bool, GeomError> {
    let winding = orient2d(a, b, c);
    if winding == Orientation::Collinear {
        return Err(GeomError::DegenerateTriangle);
    }
    Ok(contains_oriented(p, a, b, c, winding, closed))
}

/// Same as [`point_in_triangle`] for a triangle already known to have the
/// given non-collinear `winding`.
#[inline]
pub(crate) fn contains_oriented(
    p: Point2,
    a: Point2,
    b: Point2,
    c: Point2,
    winding: Orientation,
    closed: bool,
) -> bool {
    for (u, v) in [(a, b), (b, c), (c, a)] {
        let o = orient2d(u, v, p);
        if o == Orientation::Collinear {
            if !closed {
                return false;
            }
        } else if o != winding {
            return false;
        }
    }
    true
}

/// Is `q` on the closed segment `ab`, given that the three are collinear.
fn on_collinear_segment(a: Point2, b: Point2, q: Point2) -> bool {
    q.x >= a.x.min(b.x) && q.x <= a.x.max(b.x) && q.y >= a.y.min(b.y) && q.y <= a.y.max(b.y)
}

/// Exact closed-segment intersection test.
pub fn segments_intersect(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool {
    let o1 = orient2d(p1, p2, q1);
    let o2 = orient2d(p1, p2, q2);
    let o3 = orient2d(q1, q2, p1);
    let o4 = orient2d(q1, q2, p2);

    if o1 != o2
        && o3 != o4
        && o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
    {
        return true;
    }
    (o1 == Orientation::Collinear && on_collinear_segment(p1, p2, q1))
        || (o2 == Orientation::Collinear && on_collinear_segment(p1, p2, q2))
        || (o3 == Orientation::Collinear && on_collinear_segment(q1, q2, p1))
        || (o4 == Orientation::Collinear && on_collinear_segment(q1, q2, p2))
}

/// Two edges `(a, b)` and `(b, c)` sharing `b` overlap beyond `b`.
fn adjacent_edges_fold(a: Point2, b: Point2, c: Point2) -> bool {
    if orient2d(a, b, c) != Orientation::Collinear {
        return false;
    }
    // Collinear: compare along whichever axis separates a from b.
    if a.x != b.x {
        (a.x > b.x) == (c.x > b.x) && c.x != b.x
    } else {
        (a.y > b.y) == (c.y > b.y) && c.y != b.y
    }
}

/// A closed polygonal chain. The last vertex connects back to the first and
/// is not repeated.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point2>,
}

impl Polygon {
    /// Checks the structural invariants: at least three vertices, finite
    /// coordinates, no zero-length edge.
    pub fn new(vertices: Vec<Point2>) -> Result<Self, GeomError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeomError::TooFewVertices { len: n });
        }
        for (i, v) in vertices.iter().enumerate() {
            if !(v.x.is_finite() && v.y.is_finite()) {
                return Err(GeomError::NonFinite);
            }
            if *v == vertices[(i + 1) % n] {
                return Err(GeomError::RepeatedVertex { index: i });
            }
        }
        Ok(Polygon { vertices })
    }

    pub fn from_coords(coords: &[(f64, f64)]) -> Result<Self, GeomError> {
        let mut pts = Vec::with_capacity(coords.len());
        for &(x, y) in coords {
            pts.push(Point2::try_new(x, y)?);
        }
        Polygon::new(pts)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point2> {
        self.vertices
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Vertex at cyclic position `i`.
    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Shoelace area, positive for counter-clockwise chains. Floating point.
    pub fn signed_area(&self) -> f64 {
        let mut acc = 0.0;
        for (a, b) in self.edges() {
            acc += a.cross(b);
        }
        0.5 * acc
    }

    /// Exact winding of a simple polygon, read off at its lexicographically
    /// smallest vertex (which is always strictly convex for simple chains).
    pub fn orientation(&self) -> Orientation {
        let n = self.vertices.len();
        let mut lo = 0;
        for i in 1..n {
            let (v, w) = (self.vertices[i], self.vertices[lo]);
            if v.x < w.x || (v.x == w.x && v.y < w.y) {
                lo = i;
            }
        }
        orient2d(
            self.vertices[(lo + n - 1) % n],
            self.vertices[lo],
            self.vertices[(lo + 1) % n],
        )
    }

    /// Same cycle, opposite direction, first vertex kept in place.
    pub fn reversed(&self) -> Polygon {
        let mut vertices = Vec::with_capacity(self.vertices.len());
        vertices.push(self.vertices[0]);
        vertices.extend(self.vertices[1..].iter().rev());
        Polygon { vertices }
    }

    /// Same cycle starting at vertex `k`.
    pub fn rotated(&self, k: usize) -> Polygon {
        let mut vertices = self.vertices.clone();
        let n = vertices.len();
        vertices.rotate_left(k % n);
        Polygon { vertices }
    }

    pub fn diameter_bound(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        (hi - lo).norm()
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        bounding_box(&self.vertices)
    }
}

pub(crate) fn bounding_box(pts: &[Point2]) -> (Point2, Point2) {
    let mut lo = pts[0];
    let mut hi = pts[0];
    for p in &pts[1..] {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

/// True iff no two edges meet except consecutive edges at their shared
/// vertex. Pairwise exact tests, pruned by an x-interval sweep.
pub fn is_simple(poly: &Polygon) -> bool {
    let v = poly.vertices();
    let n = v.len();
    if n == 3 {
        return orient2d(v[0], v[1], v[2]) != Orientation::Collinear;
    }
    for i in 0..n {
        if adjacent_edges_fold(v[i], v[(i + 1) % n], v[(i + 2) % n]) {
            return false;
        }
    }

    let span = |i: usize| {
        let (a, b) = (v[i], v[(i + 1) % n]);
        (a.x.min(b.x), a.x.max(b.x), a.y.min(b.y), a.y.max(b.y))
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&i, &j| span(i).0.total_cmp(&span(j).0));

    for (k, &i) in order.iter().enumerate() {
        let (_, ix1, iy0, iy1) = span(i);
        for &j in &order[k + 1..] {
            let (jx0, _, jy0, jy1) = span(j);
            if jx0 > ix1 {
                break;
            }
            if jy0 > iy1 || jy1 < iy0 {
                continue;
            }
            let d = i.abs_diff(j);
            if d == 1 || d == n - 1 {
                continue;
            }
            if segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]) {
                return false;
            }
        }
    }
    true
}

/// Every consecutive triple turns strictly left and the chain winds exactly
/// once.
pub fn is_strictly_convex(poly: &Polygon) -> bool {
    let v = poly.vertices();
    let n = v.len();
    for i in 0..n {
        if orient2d(v[i], v[(i + 1) % n], v[(i + 2) % n]) != Orientation::Ccw {
            return false;
        }
    }
    // With only left turns (each < pi) the edge direction passes the
    // negative x axis once per full revolution.
    let upper = |d: Point2| d.y > 0.0 || (d.y == 0.0 && d.x > 0.0);
    let mut wraps = 0;
    for i in 0..n {
        let d0 = v[(i + 1) % n] - v[i];
        let d1 = v[(i + 2) % n] - v[(i + 1) % n];
        if upper(d0) && !upper(d1) {
            wraps += 1;
        }
    }
    wraps == 1
}

/// Returns the polygon wound counter-clockwise, reversing it if needed.
pub fn normalize_ccw(poly: &Polygon) -> Result<Polygon, GeomError> {
    match poly.orientation() {
        Orientation::Ccw => Ok(poly.clone()),
        Orientation::Cw => Ok(poly.reversed()),
        Orientation::Collinear => Err(GeomError::ZeroArea),
    }
}

/// Interior angle at `v` of a counter-clockwise chain `prev -> v -> next`,
/// in `[0, 2pi)`.
///
/// The value is floating point but its side of `pi` always agrees with the
/// exact orientation of the triple: strictly convex corners are below `pi`,
/// reflex corners above, and exactly `pi` is returned only for collinear
/// triples. A folded spike (both neighbours in the same direction) is 0.
pub fn interior_angle(prev: Point2, v: Point2, next: Point2) -> f64 {
    let to_next = next - v;
    let to_prev = prev - v;
    let mut angle = libm::atan2(to_next.cross(to_prev), to_next.dot(to_prev));
    if angle < 0.0 {
        angle += TAU;
    }
    match orient2d(prev, v, next) {
        Orientation::Ccw => angle.clamp(f64::MIN_POSITIVE, PI.next_down()),
        Orientation::Cw => angle.clamp(PI.next_up(), TAU.next_down()),
        Orientation::Collinear => {
            if to_next.dot(to_prev) < 0.0 {
                PI
            } else {
                0.0
            }
        }
    }
}

/// Total order on `f64` keys, for use in heaps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct OrdF64(pub f64);

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn tri() -> (Point2, Point2, Point2) {
        (p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0))
    }

    #[test]
    fn orient_basic() {
        let (a, b, c) = tri();
        assert_eq!(orient2d(a, b, c), Orientation::Ccw);
        assert_eq!(orient2d(a, c, b), Orientation::Cw);
        assert_eq!(
            orient2d(p(0.0, 0.0), p(1.0, 1.0), p(2.0, 2.0)),
            Orientation::Collinear
        );
    }

    #[test]
    fn point_in_triangle_cases() {
        let (a, b, c) = tri();
        assert!(point_in_triangle(p(0.25, 0.25), a, b, c, false).unwrap());
        assert!(point_in_triangle(p(0.5, 0.0), a, b, c, true).unwrap());
        assert!(!point_in_triangle(p(0.5, 0.0), a, b, c, false).unwrap());
        for closed in [true, false] {
            assert!(!point_in_triangle(p(1.0, 1.0), a, b, c, closed).unwrap());
        }
        assert_eq!(
            point_in_triangle(p(0.5, 0.5), a, p(1.0, 1.0), p(2.0, 2.0), true),
            Err(GeomError::DegenerateTriangle)
        );
    }

    #[test]
    fn polygon_rejects_bad_input() {
        assert_eq!(
            Polygon::from_coords(&[(0.0, 0.0), (1.0, 0.0)]),
            Err(GeomError::TooFewVertices { len: 2 })
        );
        assert_eq!(
            Polygon::from_coords(&[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 1.0)]),
            Err(GeomError::RepeatedVertex { index: 1 })
        );
        assert_eq!(
            Polygon::from_coords(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.0, 0.0)]),
            Err(GeomError::RepeatedVertex { index: 3 })
        );
        assert_eq!(Point2::try_new(f64::NAN, 0.0), Err(GeomError::NonFinite));
        assert_eq!(
            Point2::try_new(0.0, f64::INFINITY),
            Err(GeomError::NonFinite)
        );
    }

    #[test]
    fn simplicity() {
        let square =
            Polygon::from_coords(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap();
        assert!(is_simple(&square));
        let bowtie =
            Polygon::from_coords(&[(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)]).unwrap();
        assert!(!is_simple(&bowtie));
        // Fold back along an edge.
        let fold = Polygon::from_coords(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.0), (1.0, 1.0)]).unwrap();
        assert!(!is_simple(&fold));
        // A vertex touching a non-adjacent edge.
        let touch =
            Polygon::from_coords(&[(0.0, 0.0), (4.0, 0.0), (4.0, 2.0), (2.0, 0.0), (0.0, 2.0)])
                .unwrap();
        assert!(!is_simple(&touch));
        let flat = Polygon::from_coords(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]).unwrap();
        assert!(!is_simple(&flat));
    }

    #[test]
    fn strict_convexity() {
        let hex: Vec<Point2> = (0..6)
            .map(|k| {
                let t = k as f64 * PI / 3.0;
                p(libm::cos(t), libm::sin(t))
            })
            .collect();
        assert!(is_strictly_convex(&Polygon::new(hex).unwrap()));
        let square_mid =
            Polygon::from_coords(&[(0.0, 0.0), (0.5, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
                .unwrap();
        assert!(!is_strictly_convex(&square_mid));
        // A pentagram turns left everywhere but winds twice.
        let pentagram: Vec<Point2> = (0..5)
            .map(|k| {
                let t = (2 * k) as f64 * 2.0 * PI / 5.0;
                p(libm::cos(t), libm::sin(t))
            })
            .collect();
        let pentagram = Polygon::new(pentagram).unwrap();
        assert!(!is_simple(&pentagram));
        assert!(!is_strictly_convex(&pentagram));
        let cw = Polygon::from_coords(&[(0.0, 0.0), (0.0, 1.0), (1.0, 0.0)]).unwrap();
        assert!(!is_strictly_convex(&cw));
    }

    #[test]
    fn normalize() {
        let ccw = Polygon::from_coords(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]).unwrap();
        assert_eq!(normalize_ccw(&ccw).unwrap(), ccw);
        let cw = Polygon::from_coords(&[(0.0, 0.0), (0.0, 1.0), (1.0, 0.0)]).unwrap();
        let fixed = normalize_ccw(&cw).unwrap();
        assert_eq!(fixed.vertices(), &[p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)]);
        assert_eq!(fixed.vertex(0), cw.vertex(0));
    }

    #[test]
    fn angles() {
        let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
        assert!(close(
            interior_angle(p(0.0, 1.0), p(0.0, 0.0), p(1.0, 0.0)),
            PI / 2.0
        ));
        assert!(close(
            interior_angle(p(1.0, 0.0), p(0.0, 0.0), p(0.0, 1.0)),
            1.5 * PI
        ));
        assert!(close(
            interior_angle(p(1.0, 0.0), p(0.0, 0.0), p(1.0, 1.0)),
            1.75 * PI
        ));
        assert_eq!(interior_angle(p(-1.0, 0.0), p(0.0, 0.0), p(1.0, 0.0)), PI);
        // Nearly straight; the float angle rounds to pi but the exact test
        // says the corner is reflex.
        let a = interior_angle(p(1.0, 0.0), p(0.0, 0.0), p(-1.0, 1e-16));
        assert_eq!(
            orient2d(p(1.0, 0.0), p(0.0, 0.0), p(-1.0, 1e-16)),
            Orientation::Cw
        );
        assert!(a > PI);
        let a = interior_angle(p(-1.0, 1e-16), p(0.0, 0.0), p(1.0, 0.0));
        assert!(a < PI);
    }

    #[test]
    fn rotated_and_reversed() {
        let poly = Polygon::from_coords(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap();
        assert_eq!(poly.rotated(1).vertex(0), p(1.0, 0.0));
        assert_eq!(poly.reversed().reversed(), poly);
        assert!(poly.signed_area() > 0.0);
        assert!(poly.reversed().signed_area() < 0.0);
    }
}
