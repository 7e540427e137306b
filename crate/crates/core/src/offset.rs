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

//! Offsetting: an inner polygon plus the band of triangles joining it to
//! the outer one.
//!
//! The topological offset works on any simple polygon by sampling interior
//! edges of a guiding triangulation. The geometric offset projects a
//! polygon onto a disk around a kernel point and is strictly convex by
//! construction. Both sides share the band connectivity, which depends
//! only on the per-vertex multiplicities.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use thiserror::Error;

use crate::earcut::{earcut_single, EarStrategy, EarcutError};
use crate::geom::{is_simple, is_strictly_convex, orient2d, Orientation, Point2, Polygon};
use crate::mesh::Triangle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OffsetError {
    #[error("polygon is not simple")]
    NotSimple,
    #[error("polygon is wound clockwise")]
    Clockwise,
    #[error("offsetting needs more than 3 vertices, got {len}")]
    TooFewVertices { len: usize },
    #[error("vertex {vertex} coincides with the disk center")]
    DegenerateRay { vertex: usize },
    #[error("vertices {vertex} and its successor project to the same angle")]
    AngleCollision { vertex: usize },
    #[error("disk center is not strictly inside the kernel (edge {edge})")]
    CenterOutsideKernel { edge: usize },
    #[error("disk does not fit strictly inside the polygon")]
    DiskNotInside,
    #[error("multiplicities do not match the polygons")]
    MultiplicityMismatch,
    #[error("polygon kernel is empty")]
    EmptyKernel,
    #[error("shrink factor must lie in (0, 1)")]
    InvalidShrink,
    #[error("disk radius must be positive and finite")]
    InvalidRadius,
    #[error("offset polygon is not simple")]
    InnerNotSimple,
    #[error("offset polygon is not strictly convex")]
    InnerNotConvex,
}

/// Inner polygon and band. Band triangles index a table holding the outer
/// vertices first, then the inner ones. `multiplicities[i]` inner vertices
/// belong to outer vertex `i`, consecutively and in order.
#[derive(Debug, Clone, PartialEq)]
pub struct OffsetResult {
    pub inner: Polygon,
    pub band: Vec<Triangle>,
    pub multiplicities: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    center: Point2,
    radius: f64,
}

impl Disk {
    pub fn new(center: Point2, radius: f64) -> Result<Self, OffsetError> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(OffsetError::InvalidRadius);
        }
        Ok(Disk { center, radius })
    }

    pub fn center(&self) -> Point2 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// Band connectivity for an outer polygon of `outer_len` vertices.
///
/// For each outer vertex `i`, `n_i - 1` fan triangles over its consecutive
/// offset points, then the quad towards vertex `i + 1`, split along
/// `(p_{i+1}, p'_{i,n_i})`. Total: inner + outer count.
pub fn band_connectivity(outer_len: usize, multiplicities: &[usize]) -> Vec<Triangle> {
    let n = outer_len;
    let mut start = Vec::with_capacity(n);
    let mut acc = n;
    for &m in multiplicities {
        start.push(acc);
        acc += m;
    }
    let inner_len = acc - n;
    let mut tris = Vec::with_capacity(inner_len + n);
    for i in 0..n {
        let s = start[i];
        let last = s + multiplicities[i] - 1;
        for j in s..last {
            tris.push(Triangle::new(i, j + 1, j));
        }
        let i1 = (i + 1) % n;
        tris.push(Triangle::new(i, i1, last));
        tris.push(Triangle::new(i1, start[i1], last));
    }
    tris
}

/// Checks the multiplicities against both polygons and returns the band.
pub fn band_triangulate(
    outer: &Polygon,
    inner: &Polygon,
    multiplicities: &[usize],
) -> Result<Vec<Triangle>, OffsetError> {
    if multiplicities.len() != outer.len()
        || multiplicities.contains(&0)
        || multiplicities.iter().sum::<usize>() != inner.len()
    {
        return Err(OffsetError::MultiplicityMismatch);
    }
    Ok(band_connectivity(outer.len(), multiplicities))
}

/// Offset-point parameter along an interior edge from a boundary vertex:
/// a third towards another boundary vertex, half towards a split point.
fn edge_parameter(far_end_is_boundary: bool) -> f64 {
    if far_end_is_boundary {
        1.0 / 3.0
    } else {
        0.5
    }
}

/// Topological offset guided by an angle-prioritized triangulation.
pub fn topological_offset(poly: &Polygon) -> Result<OffsetResult, OffsetError> {
    topological_offset_with(poly, EarStrategy::AnglePrioritized)
}

/// Topological offset with an explicit strategy for the guiding
/// triangulation.
pub fn topological_offset_with(
    poly: &Polygon,
    strategy: EarStrategy,
) -> Result<OffsetResult, OffsetError> {
    let n = poly.len();
    if n <= 3 {
        return Err(OffsetError::TooFewVertices { len: n });
    }
    let tris = earcut_single(poly, strategy).map_err(|e| match e {
        EarcutError::Clockwise(_) => OffsetError::Clockwise,
        _ => OffsetError::NotSimple,
    })?;
    let mut mesh = GuideMesh::new(poly.vertices().to_vec(), tris);
    mesh.refine(n);

    let mut inner = Vec::new();
    let mut multiplicities = Vec::with_capacity(n);
    for v in 0..n {
        let fan = mesh.interior_neighbours(v, n);
        debug_assert!(!fan.is_empty());
        let origin = mesh.pts[v];
        for &x in &fan {
            inner.push(origin.lerp(mesh.pts[x], edge_parameter(x < n)));
        }
        multiplicities.push(fan.len());
    }
    let inner = Polygon::new(inner).map_err(|_| OffsetError::InnerNotSimple)?;
    if !is_simple(&inner) {
        return Err(OffsetError::InnerNotSimple);
    }
    let band = band_connectivity(n, &multiplicities);
    Ok(OffsetResult {
        inner,
        band,
        multiplicities,
    })
}

/// Triangulation being refined: boundary vertices `0..n` first, then
/// split points.
struct GuideMesh {
    pts: Vec<Point2>,
    tris: Vec<Triangle>,
}

impl GuideMesh {
    fn new(pts: Vec<Point2>, tris: Vec<Triangle>) -> Self {
        GuideMesh { pts, tris }
    }

    /// Splits the edge opposite every boundary vertex that has no interior
    /// edge. Such a vertex is the tip of exactly one triangle, whose third
    /// edge is a diagonal since the polygon has more than three vertices.
    fn refine(&mut self, n: usize) {
        let mut incident = alloc::vec![0usize; n];
        for t in &self.tris {
            for v in t.indices() {
                if v < n {
                    incident[v] += 1;
                }
            }
        }
        for v in 0..n {
            if incident[v] != 1 {
                continue;
            }
            let t_idx = self
                .tris
                .iter()
                .position(|t| t.indices().contains(&v))
                .unwrap();
            let [a, b, c] = rotate_to(self.tris[t_idx], v);
            debug_assert_eq!(a, v);
            let (prev, next) = (c, b);
            // Neighbour across (next, prev) holds the directed edge prev -> next.
            let s_idx = self
                .tris
                .iter()
                .position(|t| has_directed_edge(t, prev, next))
                .expect("ear diagonal without a neighbouring triangle");
            let [_, _, x] = rotate_to(self.tris[s_idx], prev);
            let m = self.pts.len();
            self.pts.push(self.pts[prev].lerp(self.pts[next], 0.5));
            self.tris[t_idx] = Triangle::new(prev, v, m);
            self.tris.push(Triangle::new(m, v, next));
            self.tris[s_idx] = Triangle::new(prev, m, x);
            self.tris.push(Triangle::new(m, next, x));
            incident[v] += 1;
            if x < n {
                incident[x] += 1;
            }
        }
    }

    /// Interior neighbours of boundary vertex `v`, ordered from the
    /// preceding boundary edge to the following one.
    fn interior_neighbours(&self, v: usize, n: usize) -> Vec<usize> {
        let mut around: BTreeMap<usize, usize> = BTreeMap::new();
        for t in &self.tris {
            if t.indices().contains(&v) {
                let [_, b, c] = rotate_to(*t, v);
                around.insert(b, c);
            }
        }
        let (prev, next) = ((v + n - 1) % n, (v + 1) % n);
        let mut fan = Vec::new();
        let mut at = around[&next];
        while at != prev {
            fan.push(at);
            at = around[&at];
        }
        fan.reverse();
        fan
    }
}

/// Triangle corners rotated so that `v` comes first.
fn rotate_to(t: Triangle, v: usize) -> [usize; 3] {
    let [a, b, c] = t.indices();
    if a == v {
        [a, b, c]
    } else if b == v {
        [b, c, a]
    } else {
        [c, a, b]
    }
}

fn has_directed_edge(t: &Triangle, from: usize, to: usize) -> bool {
    let [a, b, c] = t.indices();
    (a == from && b == to) || (b == from && c == to) || (c == from && a == to)
}

/// Geometric offset of `poly` onto `disk`.
///
/// Each vertex is projected onto the circle along the ray from the center.
/// Extra points for vertex `i` sample the first half of the arc towards the
/// next projection, at fractions `k / (2 n_i)`. When the vertex is close to
/// the disk the arc is first clipped to the part visible from the vertex.
pub fn geometric_offset(
    poly: &Polygon,
    disk: &Disk,
    multiplicities: &[usize],
) -> Result<OffsetResult, OffsetError> {
    let n = poly.len();
    if multiplicities.len() != n || multiplicities.contains(&0) {
        return Err(OffsetError::MultiplicityMismatch);
    }
    let c = disk.center();
    let r = disk.radius();
    let pts = poly.vertices();

    for (i, &p) in pts.iter().enumerate() {
        if p == c {
            return Err(OffsetError::DegenerateRay { vertex: i });
        }
    }
    for i in 0..n {
        let (p, q) = (pts[i], pts[(i + 1) % n]);
        match orient2d(c, p, q) {
            Orientation::Ccw => {}
            Orientation::Cw => return Err(OffsetError::CenterOutsideKernel { edge: i }),
            Orientation::Collinear => {
                let same_ray = (p - c).dot(q - c) > 0.0;
                return Err(if same_ray {
                    OffsetError::AngleCollision { vertex: i }
                } else {
                    OffsetError::CenterOutsideKernel { edge: i }
                });
            }
        }
    }

    let angles: Vec<f64> = pts
        .iter()
        .map(|&p| libm::atan2(p.y - c.y, p.x - c.x))
        .collect();
    let total: usize = multiplicities.iter().sum();
    let mut inner = Vec::with_capacity(total);
    for i in 0..n {
        let reach = pts[i].distance(c);
        if reach <= r {
            return Err(OffsetError::DiskNotInside);
        }
        inner.push(c + (pts[i] - c) * (r / reach));
        let count = multiplicities[i];
        if count == 1 {
            continue;
        }
        let mut arc = angles[(i + 1) % n] - angles[i];
        if arc <= 0.0 {
            arc += TAU;
        }
        let visible = 2.0 * libm::acos(r / reach);
        let arc = arc.min(visible);
        for k in 1..count {
            let theta = angles[i] + arc * k as f64 / (2 * count) as f64;
            inner.push(Point2 {
                x: c.x + r * libm::cos(theta),
                y: c.y + r * libm::sin(theta),
            });
        }
    }
    let inner = Polygon::new(inner).map_err(|_| OffsetError::InnerNotConvex)?;
    if !is_strictly_convex(&inner) {
        return Err(OffsetError::InnerNotConvex);
    }
    let band = band_connectivity(n, multiplicities);
    Ok(OffsetResult {
        inner,
        band,
        multiplicities: multiplicities.to_vec(),
    })
}

fn segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    let t = if len2 > 0.0 {
        ((p - a).dot(ab) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    p.distance(a + ab * t)
}

/// Distance from `p` to the polygon boundary.
pub fn boundary_distance(poly: &Polygon, p: Point2) -> f64 {
    poly.edges()
        .map(|(a, b)| segment_distance(p, a, b))
        .fold(f64::INFINITY, f64::min)
}

/// True iff `p` is strictly left of every edge, decided exactly.
pub fn in_open_kernel(poly: &Polygon, p: Point2) -> bool {
    poly.edges()
        .all(|(a, b)| orient2d(a, b, p) == Orientation::Ccw)
}

/// Checks that a user-supplied disk has its center strictly inside the
/// kernel and fits strictly inside the polygon.
pub fn check_disk(poly: &Polygon, disk: &Disk) -> Result<(), OffsetError> {
    let c = disk.center();
    for (edge, (a, b)) in poly.edges().enumerate() {
        if orient2d(a, b, c) != Orientation::Ccw {
            return Err(OffsetError::CenterOutsideKernel { edge });
        }
    }
    if disk.radius() >= boundary_distance(poly, c) {
        return Err(OffsetError::DiskNotInside);
    }
    Ok(())
}

/// Kernel of a counter-clockwise polygon as a convex polygon, by clipping
/// a bounding box against each edge's left half-plane. `None` when empty.
pub fn kernel(poly: &Polygon) -> Option<Vec<Point2>> {
    let (lo, hi) = poly.bounding_box();
    let pad = (hi - lo).norm() + 1.0;
    let mut region = alloc::vec![
        Point2 {
            x: lo.x - pad,
            y: lo.y - pad
        },
        Point2 {
            x: hi.x + pad,
            y: lo.y - pad
        },
        Point2 {
            x: hi.x + pad,
            y: hi.y + pad
        },
        Point2 {
            x: lo.x - pad,
            y: hi.y + pad
        },
    ];
    for (a, b) in poly.edges() {
        region = clip_left(&region, a, b);
        if region.len() < 3 {
            return None;
        }
    }
    if convex_area(&region) <= 0.0 {
        return None;
    }
    Some(region)
}

fn clip_left(region: &[Point2], a: Point2, b: Point2) -> Vec<Point2> {
    let dir = b - a;
    let side = |p: Point2| dir.cross(p - a);
    let mut out = Vec::with_capacity(region.len() + 1);
    for k in 0..region.len() {
        let p = region[k];
        let q = region[(k + 1) % region.len()];
        let (sp, sq) = (side(p), side(q));
        if sp >= 0.0 {
            out.push(p);
        }
        if (sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0) {
            out.push(p.lerp(q, sp / (sp - sq)));
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

fn convex_area(pts: &[Point2]) -> f64 {
    let n = pts.len();
    0.5 * (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).sum::<f64>()
}

fn centroid(pts: &[Point2]) -> Point2 {
    let n = pts.len();
    let area = convex_area(pts);
    let mut cx = 0.0;
    let mut cy = 0.0;
    for i in 0..n {
        let (p, q) = (pts[i], pts[(i + 1) % n]);
        let w = p.cross(q);
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    let c = Point2 {
        x: cx / (6.0 * area),
        y: cy / (6.0 * area),
    };
    if c.x.is_finite() && c.y.is_finite() {
        c
    } else {
        let sum = pts.iter().fold(Point2::default(), |acc, &p| acc + p);
        sum * (1.0 / n as f64)
    }
}

/// Disk centered at the kernel centroid, with radius `shrink` times the
/// distance from there to the boundary.
pub fn auto_disk(poly: &Polygon, shrink: f64) -> Result<Disk, OffsetError> {
    if !(shrink > 0.0 && shrink < 1.0) {
        return Err(OffsetError::InvalidShrink);
    }
    let region = kernel(poly).ok_or(OffsetError::EmptyKernel)?;
    let c = centroid(&region);
    if !in_open_kernel(poly, c) {
        return Err(OffsetError::EmptyKernel);
    }
    Disk::new(c, shrink * boundary_distance(poly, c)).map_err(|_| OffsetError::EmptyKernel)
}

pub const DEFAULT_SHRINK: f64 = 0.9;

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn poly(coords: &[(f64, f64)]) -> Polygon {
        Polygon::from_coords(coords).unwrap()
    }

    fn unit_square() -> Polygon {
        poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    }

    #[test]
    fn band_counts() {
        assert_eq!(band_connectivity(4, &[1, 1, 1, 1]).len(), 8);
        let tris = band_connectivity(5, &[2, 1, 1, 1, 1]);
        assert_eq!(tris.len(), 11);
        assert_eq!(tris[0], Triangle::new(0, 6, 5));
        assert_eq!(tris[1], Triangle::new(0, 1, 6));
        assert_eq!(tris[2], Triangle::new(1, 7, 6));
        // Wraps back to the first offset point of vertex 0.
        assert_eq!(*tris.last().unwrap(), Triangle::new(0, 5, 10));
    }

    #[test]
    fn band_triangulate_checks_multiplicities() {
        let sq = unit_square();
        let inner = poly(&[(0.4, 0.4), (0.6, 0.4), (0.6, 0.6), (0.4, 0.6)]);
        assert!(band_triangulate(&sq, &inner, &[1, 1, 1, 1]).is_ok());
        assert_eq!(
            band_triangulate(&sq, &inner, &[2, 1, 1, 1]),
            Err(OffsetError::MultiplicityMismatch)
        );
        assert_eq!(
            band_triangulate(&sq, &inner, &[1, 1, 2]),
            Err(OffsetError::MultiplicityMismatch)
        );
        assert_eq!(
            band_triangulate(&sq, &inner, &[0, 2, 1, 1]),
            Err(OffsetError::MultiplicityMismatch)
        );
    }

    #[test]
    fn square_topological_offset() {
        let off = topological_offset(&unit_square()).unwrap();
        // One split of the shared diagonal serves both ear tips.
        assert_eq!(off.multiplicities, vec![1, 1, 1, 1]);
        assert!(is_simple(&off.inner));
        assert_eq!(off.band.len(), 8);
    }

    #[test]
    fn too_few_vertices() {
        let t = poly(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        assert_eq!(
            topological_offset(&t),
            Err(OffsetError::TooFewVertices { len: 3 })
        );
    }

    #[test]
    fn geometric_offset_projects_corners() {
        let disk = Disk::new(Point2::new(0.5, 0.5), 0.25).unwrap();
        let off = geometric_offset(&unit_square(), &disk, &[1, 1, 1, 1]).unwrap();
        let d = 0.25 / libm::sqrt(2.0);
        let p0 = off.inner.vertex(0);
        assert!((p0.x - (0.5 - d)).abs() < 1e-15 && (p0.y - (0.5 - d)).abs() < 1e-15);
        assert!(is_strictly_convex(&off.inner));
    }

    #[test]
    fn geometric_offset_errors() {
        let sq = unit_square();
        let disk = Disk::new(Point2::new(0.0, 0.0), 0.1).unwrap();
        assert_eq!(
            geometric_offset(&sq, &disk, &[1; 4]),
            Err(OffsetError::DegenerateRay { vertex: 0 })
        );
        let disk = Disk::new(Point2::new(0.5, 0.5), 0.1).unwrap();
        assert_eq!(
            geometric_offset(&sq, &disk, &[1; 3]),
            Err(OffsetError::MultiplicityMismatch)
        );
        // Two vertices on one ray from the center.
        let wedge = poly(&[(0.0, 0.0), (2.0, 0.0), (4.0, 0.0), (2.0, 2.0)]);
        let disk = Disk::new(Point2::new(-1.0, 0.0), 0.1).unwrap();
        assert!(matches!(
            geometric_offset(&wedge, &disk, &[1; 4]),
            Err(OffsetError::AngleCollision { .. }) | Err(OffsetError::CenterOutsideKernel { .. })
        ));
        let disk = Disk::new(Point2::new(0.5, 0.5), 0.8).unwrap();
        assert_eq!(
            geometric_offset(&sq, &disk, &[1; 4]),
            Err(OffsetError::DiskNotInside)
        );
        assert_eq!(
            Disk::new(Point2::new(0.0, 0.0), 0.0),
            Err(OffsetError::InvalidRadius)
        );
    }

    #[test]
    fn collinear_center_is_an_angle_collision() {
        // Center on the line through vertices 1 and 2, outside the edge.
        let p = poly(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (0.0, 3.0)]);
        let disk = Disk::new(Point2::new(-1.0, -1.0), 0.1).unwrap();
        let err = geometric_offset(&p, &disk, &[1; 4]).unwrap_err();
        assert!(matches!(
            err,
            OffsetError::AngleCollision { .. } | OffsetError::CenterOutsideKernel { .. }
        ));
    }

    #[test]
    fn convex_kernel_is_the_polygon() {
        let sq = unit_square();
        let disk = auto_disk(&sq, 0.9).unwrap();
        assert!((disk.center().x - 0.5).abs() < 1e-12 && (disk.center().y - 0.5).abs() < 1e-12);
        assert!((disk.radius() - 0.45).abs() < 1e-12);
        assert_eq!(auto_disk(&sq, 1.0), Err(OffsetError::InvalidShrink));
        assert!(check_disk(&sq, &disk).is_ok());
        let big = Disk::new(Point2::new(0.5, 0.5), 0.5).unwrap();
        assert_eq!(check_disk(&sq, &big), Err(OffsetError::DiskNotInside));
    }
}
