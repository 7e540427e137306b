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

//! Canonical target domains and seeded random "splat" polygons.

use std::f64::consts::{PI, TAU};

use earmap_core::{Point2, Polygon};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TargetKind {
    /// Uniform samples of the unit circle.
    Circle,
    /// The unit square `[0, 1]^2` with its corners and evenly spread edge
    /// samples.
    Square,
    /// A `points`-pointed star with outer radius 1.
    Star { points: usize, inner_ratio: f64 },
}

impl TargetKind {
    /// The star used by the campaign.
    pub const STAR: TargetKind = TargetKind::Star {
        points: 5,
        inner_ratio: 0.5,
    };

    pub fn name(&self) -> &'static str {
        match self {
            TargetKind::Circle => "circle",
            TargetKind::Square => "square",
            TargetKind::Star { .. } => "star",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("invalid vertex count {n} for {kind}")]
    InvalidCount { kind: &'static str, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

/// Places `n - corners.len()` extra samples on the closed chain through
/// `corners`, spread as evenly as possible over the edges, uniformly along
/// each edge.
fn sample_outline(corners: &[Point2], n: usize) -> Vec<Point2> {
    let k = corners.len();
    let extra = n - k;
    let mut out = Vec::with_capacity(n);
    for e in 0..k {
        let on_edge = extra / k + usize::from(e < extra % k);
        let (a, b) = (corners[e], corners[(e + 1) % k]);
        out.push(a);
        for s in 1..=on_edge {
            out.push(a.lerp(b, s as f64 / (on_edge + 1) as f64));
        }
    }
    out
}

pub fn gen_target(kind: TargetKind, n: usize) -> Result<Polygon, GenError> {
    let pts = match kind {
        TargetKind::Circle => {
            if n < 3 {
                return Err(GenError::InvalidCount { kind: "circle", n });
            }
            (0..n)
                .map(|k| {
                    let t = TAU * k as f64 / n as f64;
                    Point2::new(t.cos(), t.sin())
                })
                .collect()
        }
        TargetKind::Square => {
            if n < 4 {
                return Err(GenError::InvalidCount { kind: "square", n });
            }
            let corners = [
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(1.0, 1.0),
                Point2::new(0.0, 1.0),
            ];
            sample_outline(&corners, n)
        }
        TargetKind::Star {
            points,
            inner_ratio,
        } => {
            if points < 2 {
                return Err(GenError::InvalidParameter("star needs at least 2 points"));
            }
            if !(inner_ratio > 0.0 && inner_ratio < 1.0) {
                return Err(GenError::InvalidParameter(
                    "star inner ratio must lie in (0, 1)",
                ));
            }
            if n < 2 * points {
                return Err(GenError::InvalidCount { kind: "star", n });
            }
            let apexes: Vec<Point2> = (0..2 * points)
                .map(|j| {
                    let t = PI / 2.0 + PI * j as f64 / points as f64;
                    let r = if j % 2 == 0 { 1.0 } else { inner_ratio };
                    Point2::new(r * t.cos(), r * t.sin())
                })
                .collect();
            sample_outline(&apexes, n)
        }
    };
    Ok(Polygon::new(pts).expect("generated outline is well formed"))
}

/// Parameters of a splat polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplatParams {
    pub seed: u64,
    pub n: usize,
    /// Angular jitter and low-frequency lobes, in `[0, 1)`.
    pub irregularity: f64,
    /// Per-vertex radial noise, in `[0, 1]`.
    pub spikiness: f64,
}

impl SplatParams {
    pub fn new(seed: u64, n: usize) -> Self {
        SplatParams {
            seed,
            n,
            irregularity: 0.5,
            spikiness: 0.3,
        }
    }
}

/// A random polygon that is star-shaped around the origin, hence simple.
///
/// Vertex angles are strictly increasing; radii combine a few smooth lobes
/// with clipped Gaussian spikes. Deterministic for a given seed.
pub fn gen_splat(params: SplatParams) -> Result<Polygon, GenError> {
    let SplatParams {
        seed,
        n,
        irregularity,
        spikiness,
    } = params;
    if n < 4 {
        return Err(GenError::InvalidCount { kind: "splat", n });
    }
    if !(0.0..1.0).contains(&irregularity) {
        return Err(GenError::InvalidParameter(
            "irregularity must lie in [0, 1)",
        ));
    }
    if !(0.0..=1.0).contains(&spikiness) {
        return Err(GenError::InvalidParameter("spikiness must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut steps: Vec<f64> = (0..n)
        .map(|_| 1.0 + irregularity * rng.random_range(-1.0..=1.0) * 0.9)
        .collect();
    let total: f64 = steps.iter().sum();
    for s in &mut steps {
        *s *= TAU / total;
    }

    let lobes: Vec<(f64, f64, f64)> = (2..=6)
        .map(|m| {
            let amp = irregularity * rng.random_range(0.0..0.35) / m as f64 * 2.0;
            (m as f64, amp, rng.random_range(0.0..TAU))
        })
        .collect();

    let mut pts = Vec::with_capacity(n);
    let mut theta = 0.0;
    for step in steps {
        let blob: f64 = 1.0
            + lobes
                .iter()
                .map(|&(m, a, ph)| a * (m * theta + ph).cos())
                .sum::<f64>();
        let noise: f64 = StandardNormal.sample(&mut rng);
        let r = (blob * (1.0 + spikiness * noise.clamp(-3.0, 3.0) * 0.3)).clamp(0.05, 4.0);
        pts.push(Point2::new(r * theta.cos(), r * theta.sin()));
        theta += step;
    }
    Ok(Polygon::new(pts).expect("radial polygon is well formed"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use earmap_core::{is_simple, is_strictly_convex, offset::kernel};

    #[test]
    fn circle_of_three_is_equilateral() {
        let t = gen_target(TargetKind::Circle, 3).unwrap();
        let d = |i: usize, j: usize| t.vertex(i).distance(t.vertex(j));
        assert!((d(0, 1) - 3f64.sqrt()).abs() < 1e-12);
        assert!((d(1, 2) - d(2, 0)).abs() < 1e-12);
        assert_eq!(t.vertex(0), Point2::new(1.0, 0.0));
    }

    #[test]
    fn square_of_eight_has_midpoints() {
        let s = gen_target(TargetKind::Square, 8).unwrap();
        assert_eq!(s.vertex(1), Point2::new(0.5, 0.0));
        assert_eq!(s.vertex(2), Point2::new(1.0, 0.0));
        assert!(!is_strictly_convex(&s));
        assert!(is_simple(&s));
    }

    #[test]
    fn ten_vertex_star() {
        let s = gen_target(
            TargetKind::Star {
                points: 5,
                inner_ratio: 0.4,
            },
            10,
        )
        .unwrap();
        assert!(is_simple(&s));
        assert!(!is_strictly_convex(&s));
        assert!(kernel(&s).is_some());
    }

    #[test]
    fn invalid_counts() {
        assert!(gen_target(TargetKind::Circle, 2).is_err());
        assert!(gen_target(TargetKind::Square, 3).is_err());
        assert!(gen_target(TargetKind::STAR, 9).is_err());
        assert!(gen_splat(SplatParams::new(1, 3)).is_err());
    }

    #[test]
    fn splat_is_deterministic() {
        let a = gen_splat(SplatParams::new(1, 20)).unwrap();
        let b = gen_splat(SplatParams::new(1, 20)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, gen_splat(SplatParams::new(2, 20)).unwrap());
    }

    #[test]
    fn regular_without_noise() {
        let p = gen_splat(SplatParams {
            seed: 9,
            n: 12,
            irregularity: 0.0,
            spikiness: 0.0,
        })
        .unwrap();
        let reference = gen_target(TargetKind::Circle, 12).unwrap();
        for (a, b) in p.vertices().iter().zip(reference.vertices()) {
            assert!(a.distance(*b) < 1e-12);
        }
    }
}
