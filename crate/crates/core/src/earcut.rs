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

//! Ear cutting on one polygon, and the compatible variant that replays
//! every cut on a second, strictly convex polygon.
//!
//! Cut decisions are taken on the first front only. The second front is
//! convex, so every one of its vertices is an ear and stays one as the
//! front shrinks; applying the same cut sequence to it yields the same
//! connectivity with all triangles positively oriented in both domains.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::f64::consts::FRAC_PI_3;

use thiserror::Error;

use crate::geom::{
    contains_oriented, interior_angle, is_simple, is_strictly_convex, orient2d, OrdF64,
    Orientation, Point2, Polygon,
};
use crate::mesh::{CompatibleMeshPair, Side, Triangle};

/// How the next ear is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EarStrategy {
    /// First valid ear found scanning forward from the last cut.
    Sequential,
    /// Valid ear whose interior angle is closest to `pi / 3`; ties go to
    /// the lower vertex index.
    #[default]
    AnglePrioritized,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EarcutError {
    #[error("polygon {0:?} is not simple")]
    NotSimple(Side),
    #[error("polygon {0:?} is wound clockwise")]
    Clockwise(Side),
    #[error("target polygon is not strictly convex")]
    NotStrictlyConvex,
    #[error("polygons have {a} and {b} vertices")]
    SizeMismatch { a: usize, b: usize },
}

/// Cyclic doubly linked sequence of live polygon vertices.
#[derive(Debug, Clone)]
pub struct Front {
    prev: Vec<usize>,
    next: Vec<usize>,
    alive: Vec<bool>,
    len: usize,
    cursor: usize,
}

impl Front {
    /// Front over all `n` vertices of a polygon, in boundary order.
    pub fn new(n: usize) -> Self {
        Front {
            prev: (0..n).map(|i| (i + n - 1) % n).collect(),
            next: (0..n).map(|i| (i + 1) % n).collect(),
            alive: vec![true; n],
            len: n,
            cursor: 0,
        }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn contains(&self, i: usize) -> bool {
        self.alive[i]
    }

    pub fn prev(&self, i: usize) -> usize {
        self.prev[i]
    }

    pub fn next(&self, i: usize) -> usize {
        self.next[i]
    }

    /// Where a sequential scan starts: vertex 0 initially, then the
    /// predecessor of the last removed vertex.
    pub fn cursor(&self) -> usize {
        self.cursor
    }

    /// Unlinks `i`.
    pub fn remove(&mut self, i: usize) {
        assert!(self.alive[i], "vertex {i} already removed");
        assert!(self.len > 3, "front cannot shrink below a triangle");
        let (p, n) = (self.prev[i], self.next[i]);
        self.next[p] = n;
        self.prev[n] = p;
        self.alive[i] = false;
        self.len -= 1;
        self.cursor = p;
    }

    /// Live vertices in order, starting at `start` (which must be live).
    pub fn iter_from(&self, start: usize) -> impl Iterator<Item = usize> + '_ {
        let mut at = start;
        (0..self.len).map(move |_| {
            let v = at;
            at = self.next[at];
            v
        })
    }

    fn ear(&self, i: usize) -> Triangle {
        Triangle::new(self.prev[i], i, self.next[i])
    }
}

fn priority(pts: &[Point2], front: &Front, i: usize) -> OrdF64 {
    let angle = interior_angle(pts[front.prev(i)], pts[i], pts[front.next(i)]);
    OrdF64((angle - FRAC_PI_3).abs())
}

fn is_convex(pts: &[Point2], front: &Front, i: usize) -> bool {
    orient2d(pts[front.prev(i)], pts[i], pts[front.next(i)]) == Orientation::Ccw
}

enum EarCheck {
    Valid,
    NotConvex,
    BlockedBy(usize),
}

/// Ear test against a candidate set. `candidates` must contain every live
/// vertex that is not strictly convex; convex vertices can only sit inside
/// an ear of a simple polygon together with a non-convex one.
fn check_ear(
    pts: &[Point2],
    front: &Front,
    i: usize,
    candidates: impl Iterator<Item = usize>,
) -> EarCheck {
    let (p, n) = (front.prev(i), front.next(i));
    let (a, b, c) = (pts[p], pts[i], pts[n]);
    if orient2d(a, b, c) != Orientation::Ccw {
        return EarCheck::NotConvex;
    }
    for w in candidates {
        if w == p || w == i || w == n || !front.contains(w) {
            continue;
        }
        let q = pts[w];
        if q == a || q == c {
            continue;
        }
        if contains_oriented(q, a, b, c, Orientation::Ccw, true) {
            return EarCheck::BlockedBy(w);
        }
    }
    EarCheck::Valid
}

fn is_valid_ear_full(pts: &[Point2], front: &Front, i: usize) -> bool {
    matches!(
        check_ear(pts, front, i, front.iter_from(i)),
        EarCheck::Valid
    )
}

/// Stateless ear search over a front of `poly`, checking every live vertex.
///
/// Panics if no valid ear exists, which cannot happen for a simple polygon.
pub fn find_valid_ear(front: &Front, poly: &Polygon, strategy: EarStrategy) -> usize {
    let pts = poly.vertices();
    let start = front.cursor();
    let found = match strategy {
        EarStrategy::Sequential => front
            .iter_from(start)
            .find(|&i| is_valid_ear_full(pts, front, i)),
        EarStrategy::AnglePrioritized => front
            .iter_from(start)
            .filter(|&i| is_valid_ear_full(pts, front, i))
            .min_by_key(|&i| (priority(pts, front, i), i)),
    };
    found.expect("simple polygon without a valid ear")
}

/// Incremental ear cutter. Keeps the set of non-convex vertices (which
/// only shrinks as ears are removed) and, for the prioritized strategy, a
/// lazily invalidated heap plus a record of which vertex blocks which ear.
struct EarCutter<'a> {
    pts: &'a [Point2],
    front: Front,
    strategy: EarStrategy,
    reflex: Vec<usize>,
    stamp: Vec<u32>,
    heap: BinaryHeap<Reverse<(OrdF64, usize, u32)>>,
    blocked_by: Vec<Vec<(usize, u32)>>,
}

impl<'a> EarCutter<'a> {
    fn new(pts: &'a [Point2], strategy: EarStrategy) -> Self {
        let n = pts.len();
        let front = Front::new(n);
        let reflex = (0..n).filter(|&i| !is_convex(pts, &front, i)).collect();
        let mut cutter = EarCutter {
            pts,
            front,
            strategy,
            reflex,
            stamp: vec![0; n],
            heap: BinaryHeap::new(),
            blocked_by: Vec::new(),
        };
        if strategy == EarStrategy::AnglePrioritized {
            cutter.blocked_by = vec![Vec::new(); n];
            for i in 0..n {
                cutter.push(i);
            }
        }
        cutter
    }

    fn push(&mut self, i: usize) {
        let key = priority(self.pts, &self.front, i);
        self.heap.push(Reverse((key, i, self.stamp[i])));
    }

    fn check(&self, i: usize) -> EarCheck {
        let result = check_ear(self.pts, &self.front, i, self.reflex.iter().copied());
        #[cfg(debug_assertions)]
        {
            let fast = matches!(result, EarCheck::Valid);
            debug_assert_eq!(
                fast,
                is_valid_ear_full(self.pts, &self.front, i),
                "ear test mismatch at {i}"
            );
        }
        result
    }

    fn find(&mut self) -> usize {
        match self.strategy {
            EarStrategy::Sequential => {
                let start = self.front.cursor();
                let mut at = start;
                for _ in 0..self.front.len() {
                    if matches!(self.check(at), EarCheck::Valid) {
                        return at;
                    }
                    at = self.front.next(at);
                }
                panic!("simple polygon without a valid ear");
            }
            EarStrategy::AnglePrioritized => {
                while let Some(Reverse((_, i, stamp))) = self.heap.pop() {
                    if !self.front.contains(i) || stamp != self.stamp[i] {
                        continue;
                    }
                    match self.check(i) {
                        EarCheck::Valid => return i,
                        // The angle only changes with the neighbours, which
                        // re-queues the vertex.
                        EarCheck::NotConvex => {}
                        EarCheck::BlockedBy(w) => self.blocked_by[w].push((i, stamp)),
                    }
                }
                panic!("simple polygon without a valid ear");
            }
        }
    }

    /// Removes the ear at `i` and returns its triangle.
    fn cut(&mut self, i: usize) -> Triangle {
        let tri = self.front.ear(i);
        self.front.remove(i);
        let (p, n) = (tri.i, tri.k);
        let reflex_changed = self.reflex.contains(&i)
            || (self.reflex.contains(&p) && is_convex(self.pts, &self.front, p))
            || (self.reflex.contains(&n) && is_convex(self.pts, &self.front, n));
        if reflex_changed {
            let (pts, front) = (self.pts, &self.front);
            self.reflex
                .retain(|&w| front.contains(w) && !is_convex(pts, front, w));
        }
        if self.strategy == EarStrategy::AnglePrioritized {
            for v in [p, n] {
                self.stamp[v] += 1;
                self.push(v);
            }
            for (v, stamp) in core::mem::take(&mut self.blocked_by[i]) {
                if self.front.contains(v) && stamp == self.stamp[v] {
                    let key = priority(self.pts, &self.front, v);
                    self.heap.push(Reverse((key, v, stamp)));
                }
            }
        }
        tri
    }

    fn lid(&self) -> Triangle {
        let a = self.front.cursor();
        Triangle::new(a, self.front.next(a), self.front.next(self.front.next(a)))
    }
}

fn check_simple_ccw(poly: &Polygon, side: Side) -> Result<(), EarcutError> {
    if !is_simple(poly) {
        return Err(EarcutError::NotSimple(side));
    }
    if poly.orientation() != Orientation::Ccw {
        return Err(EarcutError::Clockwise(side));
    }
    Ok(())
}

/// Triangulates a simple counter-clockwise polygon into `n - 2` triangles
/// without adding vertices.
pub fn earcut_single(poly: &Polygon, strategy: EarStrategy) -> Result<Vec<Triangle>, EarcutError> {
    check_simple_ccw(poly, Side::A)?;
    let mut cutter = EarCutter::new(poly.vertices(), strategy);
    let mut tris = Vec::with_capacity(poly.len() - 2);
    while cutter.front.len() > 3 {
        let i = cutter.find();
        tris.push(cutter.cut(i));
    }
    tris.push(cutter.lid());
    Ok(tris)
}

/// Grows one triangulation inside both polygons at once.
///
/// `a` must be simple, `b` strictly convex, both counter-clockwise and of
/// equal size; vertex `i` of `a` corresponds to vertex `i` of `b`. The
/// result has `n - 2` triangles, each positively oriented in both
/// embeddings, and no vertices beyond the inputs.
pub fn earcut_compatible(
    a: &Polygon,
    b: &Polygon,
    strategy: EarStrategy,
) -> Result<CompatibleMeshPair, EarcutError> {
    if a.len() != b.len() {
        return Err(EarcutError::SizeMismatch {
            a: a.len(),
            b: b.len(),
        });
    }
    check_simple_ccw(a, Side::A)?;
    if !is_strictly_convex(b) {
        return Err(EarcutError::NotStrictlyConvex);
    }

    let mut cutter = EarCutter::new(a.vertices(), strategy);
    let mut front_b = Front::new(b.len());
    let mut tris = Vec::with_capacity(a.len() - 2);
    while cutter.front.len() > 3 {
        let i = cutter.find();
        let tri = cutter.cut(i);
        assert_eq!(front_b.ear(i), tri, "fronts diverged at vertex {i}");
        front_b.remove(i);
        debug_assert_eq!(tri.orientation(b.vertices()), Orientation::Ccw);
        tris.push(tri);
    }
    let lid = cutter.lid();
    assert_eq!(front_b.ear(lid.j), lid, "fronts diverged at the lid");
    tris.push(lid);
    Ok(CompatibleMeshPair::from_boundary(a, b, tris))
}
