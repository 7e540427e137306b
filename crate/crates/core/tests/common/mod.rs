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

//! Exact-arithmetic oracles and random polygon builders shared by the
//! integration tests.

#![allow(dead_code)]

use std::f64::consts::TAU;

use earmap_core::{Orientation, Point2, Polygon, Triangle};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `x * 2^1074` as an integer; exact for every finite `f64`.
pub fn fixed(x: f64) -> BigInt {
    assert!(x.is_finite());
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mantissa, shift) = if exp == 0 {
        (frac, 0)
    } else {
        (frac | (1u64 << 52), exp - 1)
    };
    let magnitude = BigInt::from(mantissa) << shift as usize;
    if x.is_sign_negative() {
        -magnitude
    } else {
        magnitude
    }
}

/// Twice the signed area of `abc`, scaled by `2^2148`, exactly.
pub fn exact_det(a: Point2, b: Point2, c: Point2) -> BigInt {
    let (ax, ay) = (fixed(a.x), fixed(a.y));
    (fixed(b.x) - &ax) * (fixed(c.y) - &ay) - (fixed(b.y) - &ay) * (fixed(c.x) - &ax)
}

pub fn exact_orient(a: Point2, b: Point2, c: Point2) -> Orientation {
    let d = exact_det(a, b, c);
    if d.is_positive() {
        Orientation::Ccw
    } else if d.is_negative() {
        Orientation::Cw
    } else {
        Orientation::Collinear
    }
}

/// Twice the signed area of a closed chain, scaled like [`exact_det`].
pub fn exact_twice_area(pts: &[Point2]) -> BigInt {
    let fx: Vec<(BigInt, BigInt)> = pts.iter().map(|p| (fixed(p.x), fixed(p.y))).collect();
    let mut sum = BigInt::zero();
    for i in 0..fx.len() {
        let (a, b) = (&fx[i], &fx[(i + 1) % fx.len()]);
        sum += &a.0 * &b.1 - &b.0 * &a.1;
    }
    sum
}

pub fn exact_twice_area_of(tris: &[Triangle], verts: &[Point2]) -> BigInt {
    tris.iter().fold(BigInt::zero(), |acc, t| {
        let [a, b, c] = t.corners(verts);
        acc + exact_det(a, b, c)
    })
}

/// Undoes the scaling of [`exact_det`].
pub fn unscale(x: &BigInt) -> f64 {
    let r = BigRational::new(x.clone(), BigInt::from(1) << 2148usize);
    num_traits::ToPrimitive::to_f64(&r).unwrap()
}

fn on_segment(p: Point2, a: Point2, b: Point2) -> bool {
    exact_orient(a, b, p) == Orientation::Collinear
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Closed segments share at least one point.
pub fn exact_segments_meet(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let (o1, o2) = (exact_orient(a, b, c), exact_orient(a, b, d));
    let (o3, o4) = (exact_orient(c, d, a), exact_orient(c, d, b));
    let proper = o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o1 != o2
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
        && o3 != o4;
    proper
        || on_segment(c, a, b)
        || on_segment(d, a, b)
        || on_segment(a, c, d)
        || on_segment(b, c, d)
}

/// All-pairs simplicity test: non-adjacent edges are disjoint and adjacent
/// edges share only their common endpoint.
pub fn brute_is_simple(pts: &[Point2]) -> bool {
    let n = pts.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && pts[i] == pts[j] {
                return false;
            }
        }
    }
    let edge = |i: usize| (pts[i], pts[(i + 1) % n]);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = edge(i);
            let (c, d) = edge(j);
            if j == i + 1 || (i == 0 && j == n - 1) {
                // Adjacent: the shared vertex is the only common point.
                let (shared, p, r) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                if on_segment(p, shared, r) || on_segment(r, shared, p) {
                    return false;
                }
            } else if exact_segments_meet(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

/// All ordered vertex triples `i < j < k` turn counter-clockwise.
pub fn brute_is_strictly_convex(pts: &[Point2]) -> bool {
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if exact_orient(pts[i], pts[j], pts[k]) != Orientation::Ccw {
                    return false;
                }
            }
        }
    }
    n >= 3
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Star-shaped around the origin with strictly increasing angles.
pub fn radial_polygon(seed: u64, n: usize, spikiness: f64) -> Polygon {
    let mut rng = rng(seed);
    let mut steps: Vec<f64> = (0..n).map(|_| rng.random_range(0.3..1.0)).collect();
    let total: f64 = steps.iter().sum();
    steps.iter_mut().for_each(|s| *s *= TAU / total);
    let mut theta: f64 = 0.0;
    let pts = steps
        .iter()
        .map(|step| {
            let r = 1.0 + spikiness * rng.random_range(-0.9..0.9);
            let p = Point2::new(r * theta.cos(), r * theta.sin());
            theta += step;
            p
        })
        .collect();
    Polygon::new(pts).unwrap()
}

/// Convex hull by monotone chain with exact turns, counter-clockwise,
/// collinear points dropped.
pub fn convex_hull(mut pts: Vec<Point2>) -> Vec<Point2> {
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    let mut hull: Vec<Point2> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && exact_orient(hull[hull.len() - 2], hull[hull.len() - 1], p) != Orientation::Ccw
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}
