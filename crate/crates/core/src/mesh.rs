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

//! Pairs of triangle meshes sharing one connectivity, and the piecewise
//! linear map they define.

use alloc::vec::Vec;

use thiserror::Error;

use crate::geom::{bounding_box, contains_oriented, orient2d, Orientation, Point2, Polygon};
use crate::offset::OffsetResult;

/// A triangle as three vertex indices, shared by both embeddings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triangle {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl Triangle {
    pub const fn new(i: usize, j: usize, k: usize) -> Self {
        Triangle { i, j, k }
    }

    pub const fn indices(&self) -> [usize; 3] {
        [self.i, self.j, self.k]
    }

    pub fn corners(&self, verts: &[Point2]) -> [Point2; 3] {
        [verts[self.i], verts[self.j], verts[self.k]]
    }

    pub fn orientation(&self, verts: &[Point2]) -> Orientation {
        orient2d(verts[self.i], verts[self.j], verts[self.k])
    }

    fn shifted(&self, by: usize) -> Triangle {
        Triangle::new(self.i + by, self.j + by, self.k + by)
    }
}

/// Which of the two embeddings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeshError {
    #[error("embeddings have {a} and {b} vertices")]
    VertexCountMismatch { a: usize, b: usize },
    #[error("triangle {tri} references a missing or repeated vertex")]
    BadTriangle { tri: usize },
    #[error("boundary index {index} out of range")]
    BadBoundary { index: usize },
}

/// Two embeddings of the same triangle mesh. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct CompatibleMeshPair {
    verts_a: Vec<Point2>,
    verts_b: Vec<Point2>,
    tris: Vec<Triangle>,
    boundary_a: Vec<usize>,
    boundary_b: Vec<usize>,
}

impl CompatibleMeshPair {
    pub fn new(
        verts_a: Vec<Point2>,
        verts_b: Vec<Point2>,
        tris: Vec<Triangle>,
        boundary_a: Vec<usize>,
        boundary_b: Vec<usize>,
    ) -> Result<Self, MeshError> {
        let n = verts_a.len();
        if n != verts_b.len() {
            return Err(MeshError::VertexCountMismatch {
                a: n,
                b: verts_b.len(),
            });
        }
        for (tri, t) in tris.iter().enumerate() {
            let [i, j, k] = t.indices();
            if i >= n || j >= n || k >= n || i == j || j == k || i == k {
                return Err(MeshError::BadTriangle { tri });
            }
        }
        if let Some(&index) = boundary_a.iter().chain(&boundary_b).find(|&&b| b >= n) {
            return Err(MeshError::BadBoundary { index });
        }
        Ok(CompatibleMeshPair {
            verts_a,
            verts_b,
            tris,
            boundary_a,
            boundary_b,
        })
    }

    /// Both embeddings share the identity boundary `0..n` of two equally
    /// sized polygons.
    pub(crate) fn from_boundary(
        a: &Polygon,
        b: &Polygon,
        tris: Vec<Triangle>,
    ) -> CompatibleMeshPair {
        let boundary: Vec<usize> = (0..a.len()).collect();
        CompatibleMeshPair {
            verts_a: a.vertices().to_vec(),
            verts_b: b.vertices().to_vec(),
            tris,
            boundary_a: boundary.clone(),
            boundary_b: boundary,
        }
    }

    pub fn verts(&self, side: Side) -> &[Point2] {
        match side {
            Side::A => &self.verts_a,
            Side::B => &self.verts_b,
        }
    }

    pub fn verts_a(&self) -> &[Point2] {
        &self.verts_a
    }

    pub fn verts_b(&self) -> &[Point2] {
        &self.verts_b
    }

    pub fn tris(&self) -> &[Triangle] {
        &self.tris
    }

    pub fn boundary(&self, side: Side) -> &[usize] {
        match side {
            Side::A => &self.boundary_a,
            Side::B => &self.boundary_b,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.verts_a.len()
    }

    /// Exact orientation of every triangle in both embeddings.
    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    pub fn locate(&self, side: Side, p: Point2) -> Result<BarycentricLocation, LocateError> {
        locate(self, side, p)
    }

    pub fn map_point(&self, from: Side, p: Point2) -> Result<Point2, LocateError> {
        map_point(self, from, p)
    }
}

/// Triangles failing the orientation check, per embedding.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub flipped_a: Vec<usize>,
    pub flipped_b: Vec<usize>,
    pub degenerate_a: Vec<usize>,
    pub degenerate_b: Vec<usize>,
}

impl ValidationReport {
    pub fn failures(&self) -> usize {
        self.flipped_a.len()
            + self.flipped_b.len()
            + self.degenerate_a.len()
            + self.degenerate_b.len()
    }
}

/// The pair is a bijection iff every triangle is strictly counter-clockwise
/// in both embeddings.
pub fn validate(pair: &CompatibleMeshPair) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (idx, t) in pair.tris.iter().enumerate() {
        match t.orientation(&pair.verts_a) {
            Orientation::Ccw => {}
            Orientation::Cw => report.flipped_a.push(idx),
            Orientation::Collinear => report.degenerate_a.push(idx),
        }
        match t.orientation(&pair.verts_b) {
            Orientation::Ccw => {}
            Orientation::Cw => report.flipped_b.push(idx),
            Orientation::Collinear => report.degenerate_b.push(idx),
        }
    }
    report.valid = report.failures() == 0;
    report
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarycentricLocation {
    pub tri: usize,
    pub bary: [f64; 3],
}

impl BarycentricLocation {
    pub fn evaluate(&self, tri: &Triangle, verts: &[Point2]) -> Point2 {
        let [a, b, c] = tri.corners(verts);
        let [l0, l1, l2] = self.bary;
        Point2 {
            x: l0 * a.x + l1 * b.x + l2 * c.x,
            y: l0 * a.y + l1 * b.y + l2 * c.y,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum LocateError {
    #[error("point lies outside the meshed domain")]
    OutsideDomain,
}

/// Barycentric weights of `p` in triangle `(a, b, c)`, clamped to be
/// non-negative and renormalized.
pub fn barycentric(p: Point2, a: Point2, b: Point2, c: Point2) -> [f64; 3] {
    let area = (b - a).cross(c - a);
    let mut w = [
        (b - p).cross(c - p) / area,
        (c - p).cross(a - p) / area,
        (a - p).cross(b - p) / area,
    ];
    for x in &mut w {
        if *x < 0.0 {
            *x = 0.0;
        }
    }
    let sum = w[0] + w[1] + w[2];
    if sum != 1.0 {
        for x in &mut w {
            *x /= sum;
        }
    }
    w
}

/// Brute-force point location with exact containment. Boundary points
/// resolve to the lowest-index incident triangle.
pub fn locate(
    pair: &CompatibleMeshPair,
    side: Side,
    p: Point2,
) -> Result<BarycentricLocation, LocateError> {
    let verts = pair.verts(side);
    for (idx, t) in pair.tris.iter().enumerate() {
        let [a, b, c] = t.corners(verts);
        let (lo, hi) = bounding_box(&[a, b, c]);
        if p.x < lo.x || p.x > hi.x || p.y < lo.y || p.y > hi.y {
            continue;
        }
        let winding = orient2d(a, b, c);
        if winding == Orientation::Collinear {
            continue;
        }
        if contains_oriented(p, a, b, c, winding, true) {
            return Ok(BarycentricLocation {
                tri: idx,
                bary: barycentric(p, a, b, c),
            });
        }
    }
    Err(LocateError::OutsideDomain)
}

/// Image of `p` under the piecewise-linear map: same triangle, same
/// barycentric weights, other embedding.
pub fn map_point(pair: &CompatibleMeshPair, from: Side, p: Point2) -> Result<Point2, LocateError> {
    let loc = locate(pair, from, p)?;
    Ok(loc.evaluate(&pair.tris[loc.tri], pair.verts(from.other())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum StretchDirection {
    #[default]
    AtoB,
    BtoA,
}

impl StretchDirection {
    fn sides(self) -> (Side, Side) {
        match self {
            StretchDirection::AtoB => (Side::A, Side::B),
            StretchDirection::BtoA => (Side::B, Side::A),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum StretchError {
    #[error("source triangle {tri} is degenerate")]
    DegenerateSourceTriangle { tri: usize },
}

pub const HISTOGRAM_BINS: usize = 16;

/// Counts of `ln(stretch)` over equal-width bins spanning
/// `[ln_min, ln_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogHistogram {
    pub ln_min: f64,
    pub ln_max: f64,
    pub counts: [usize; HISTOGRAM_BINS],
}

#[derive(Debug, Clone, PartialEq)]
pub struct StretchReport {
    pub per_tri: Vec<f64>,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// Source-area weighted root mean square of the per-triangle values.
    pub global: f64,
    pub histogram: LogHistogram,
}

/// Largest and smallest singular values of the affine map taking the
/// source triangle onto the target triangle.
pub fn singular_values(src: [Point2; 3], dst: [Point2; 3]) -> (f64, f64) {
    let jac = jacobian(src, dst);
    let frob = jac.iter().map(|x| x * x).sum::<f64>();
    let det = (jac[0] * jac[3] - jac[1] * jac[2]).abs();
    let disc = libm::sqrt((frob * frob - 4.0 * det * det).max(0.0));
    let big = libm::sqrt(0.5 * (frob + disc));
    let small = if big > 0.0 { det / big } else { 0.0 };
    (big, small)
}

/// Row-major 2x2 Jacobian `[a, b, c, d]` of the affine map `src -> dst`.
fn jacobian(src: [Point2; 3], dst: [Point2; 3]) -> [f64; 4] {
    let e1 = src[1] - src[0];
    let e2 = src[2] - src[0];
    let f1 = dst[1] - dst[0];
    let f2 = dst[2] - dst[0];
    let det = e1.cross(e2);
    let col1 = (f1 * e2.y - f2 * e1.y) * (1.0 / det);
    let col2 = (f2 * e1.x - f1 * e2.x) * (1.0 / det);
    [col1.x, col2.x, col1.y, col2.y]
}

/// `sqrt((G^2 + g^2) / 2)` for singular values `G`, `g` of the map between
/// a source and a target triangle.
pub fn triangle_l2_stretch(src: [Point2; 3], dst: [Point2; 3]) -> f64 {
    let frob: f64 = jacobian(src, dst).iter().map(|x| x * x).sum();
    libm::sqrt(0.5 * frob)
}

pub fn l2_stretch(
    pair: &CompatibleMeshPair,
    direction: StretchDirection,
) -> Result<StretchReport, StretchError> {
    let (from, to) = direction.sides();
    let (src, dst) = (pair.verts(from), pair.verts(to));
    let mut per_tri = Vec::with_capacity(pair.tris.len());
    let mut weighted = 0.0;
    let mut total_area = 0.0;
    for (tri, t) in pair.tris.iter().enumerate() {
        if t.orientation(src) == Orientation::Collinear {
            return Err(StretchError::DegenerateSourceTriangle { tri });
        }
        let s = t.corners(src);
        let value = triangle_l2_stretch(s, t.corners(dst));
        let area = 0.5 * (s[1] - s[0]).cross(s[2] - s[0]).abs();
        weighted += value * value * area;
        total_area += area;
        per_tri.push(value);
    }
    Ok(summarize(per_tri, weighted, total_area))
}

fn summarize(per_tri: Vec<f64>, weighted: f64, total_area: f64) -> StretchReport {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut sum = 0.0;
    for &v in &per_tri {
        min = min.min(v);
        max = max.max(v);
        sum += v;
    }
    let count = per_tri.len();
    let (mean, global) = if count == 0 {
        (0.0, 0.0)
    } else {
        (sum / count as f64, libm::sqrt(weighted / total_area))
    };
    if count == 0 {
        min = 0.0;
        max = 0.0;
    }

    let mut histogram = LogHistogram {
        ln_min: if count == 0 { 0.0 } else { libm::log(min) },
        ln_max: if count == 0 { 0.0 } else { libm::log(max) },
        counts: [0; HISTOGRAM_BINS],
    };
    let width = histogram.ln_max - histogram.ln_min;
    for &v in &per_tri {
        let bin = if width > 0.0 {
            let t = (libm::log(v) - histogram.ln_min) / width;
            ((t * HISTOGRAM_BINS as f64) as usize).min(HISTOGRAM_BINS - 1)
        } else {
            0
        };
        histogram.counts[bin] += 1;
    }

    StretchReport {
        per_tri,
        min,
        max,
        mean,
        global,
        histogram,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MergeError {
    #[error("band connectivity differs between the two sides")]
    IndexMapMismatch,
    #[error("core vertices do not match the inner polygon of side {0:?}")]
    CoreMismatch(Side),
    #[error("outer polygons differ in size")]
    OuterSizeMismatch,
}

/// One side of the band stage: the outer polygon and its offset.
#[derive(Debug, Clone, Copy)]
pub struct BandStage<'a> {
    pub outer: &'a Polygon,
    pub offset: &'a OffsetResult,
}

/// Stitches a band around a core mapping.
///
/// Unified vertex numbering: outer vertices `0..n`, then the inner polygon.
/// Core vertex `k` maps to `n + k`. Without bands the core is returned as
/// is.
pub fn merge(
    core: &CompatibleMeshPair,
    bands: Option<(BandStage<'_>, BandStage<'_>)>,
) -> Result<CompatibleMeshPair, MergeError> {
    let Some((band_a, band_b)) = bands else {
        return Ok(core.clone());
    };
    if band_a.outer.len() != band_b.outer.len() {
        return Err(MergeError::OuterSizeMismatch);
    }
    if band_a.offset.band != band_b.offset.band
        || band_a.offset.multiplicities != band_b.offset.multiplicities
    {
        return Err(MergeError::IndexMapMismatch);
    }
    for (side, stage) in [(Side::A, &band_a), (Side::B, &band_b)] {
        if core.verts(side) != stage.offset.inner.vertices() {
            return Err(MergeError::CoreMismatch(side));
        }
    }

    let n = band_a.outer.len();
    let stitch = |stage: &BandStage<'_>| {
        let mut v = stage.outer.vertices().to_vec();
        v.extend_from_slice(stage.offset.inner.vertices());
        v
    };
    let mut tris = band_a.offset.band.clone();
    tris.extend(core.tris.iter().map(|t| t.shifted(n)));
    let boundary: Vec<usize> = (0..n).collect();

    Ok(CompatibleMeshPair {
        verts_a: stitch(&band_a),
        verts_b: stitch(&band_b),
        tris,
        boundary_a: boundary.clone(),
        boundary_b: boundary,
    })
}
