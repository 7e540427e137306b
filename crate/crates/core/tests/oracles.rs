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

//! Predicates checked against exact rational arithmetic.

mod common;

use common::*;
use earmap_core::{
    interior_angle, is_simple, is_strictly_convex, normalize_ccw, orient2d, Orientation, Point2,
    Polygon,
};
use rand::Rng;

#[test]
fn orient_tiny_near_collinear() {
    let (a, b, c) = (
        Point2::new(0.0, 0.0),
        Point2::new(1e-30, 1e-30),
        Point2::new(2e-30, 2.0000000000000004e-30),
    );
    let expected = exact_orient(a, b, c);
    assert_eq!(expected, Orientation::Ccw);
    assert_eq!(orient2d(a, b, c), expected);
}

#[test]
fn orient_matches_rationals_near_lines() {
    let mut rng = rng(11);
    for _ in 0..20_000 {
        let a = Point2::new(rng.random_range(-1e3..1e3), rng.random_range(-1e3..1e3));
        let b = Point2::new(rng.random_range(-1e3..1e3), rng.random_range(-1e3..1e3));
        let t: f64 = rng.random_range(-2.0..3.0);
        let mut c = a.lerp(b, t);
        // Nudge by a few ulps so every sign shows up.
        for _ in 0..rng.random_range(0..4) {
            c = Point2::new(
                next_toward(c.x, rng.random()),
                next_toward(c.y, rng.random()),
            );
        }
        assert_eq!(orient2d(a, b, c), exact_orient(a, b, c), "{a} {b} {c}");
    }
}

fn next_toward(x: f64, up: bool) -> f64 {
    let bits = x.to_bits();
    let bumped = if (x > 0.0) == up || x == 0.0 {
        bits + 1
    } else {
        bits - 1
    };
    if x == 0.0 {
        let tiny = f64::from_bits(1);
        return if up { tiny } else { -tiny };
    }
    f64::from_bits(bumped)
}

#[test]
fn orient_on_integer_grid() {
    let mut rng = rng(3);
    for _ in 0..20_000 {
        let mut p = || {
            Point2::new(
                rng.random_range(-4..=4) as f64,
                rng.random_range(-4..=4) as f64,
            )
        };
        let (a, b, c) = (p(), p(), p());
        assert_eq!(orient2d(a, b, c), exact_orient(a, b, c));
    }
}

#[test]
fn simplicity_matches_all_pairs_oracle() {
    // Small integer grids make touching vertices, overlapping edges and
    // spikes common.
    let mut rng = rng(5);
    let (mut simple, mut not_simple) = (0, 0);
    for _ in 0..20_000 {
        let n = rng.random_range(3..=8);
        let pts: Vec<Point2> = (0..n)
            .map(|_| {
                Point2::new(
                    rng.random_range(0..=4) as f64,
                    rng.random_range(0..=4) as f64,
                )
            })
            .collect();
        let Ok(poly) = Polygon::new(pts.clone()) else {
            assert!(!brute_is_simple(&pts));
            continue;
        };
        let expected = brute_is_simple(&pts);
        assert_eq!(is_simple(&poly), expected, "{pts:?}");
        if expected {
            simple += 1;
        } else {
            not_simple += 1;
        }
    }
    assert!(simple > 500 && not_simple > 500, "{simple} {not_simple}");
}

#[test]
fn star_is_simple_by_all_pairs() {
    let star: Vec<Point2> = (0..10)
        .map(|j| {
            let t = std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * j as f64 / 5.0;
            let r = if j % 2 == 0 { 1.0 } else { 0.4 };
            Point2::new(r * t.cos(), r * t.sin())
        })
        .collect();
    assert!(brute_is_simple(&star));
    assert!(is_simple(&Polygon::new(star).unwrap()));
    let pentagram: Vec<Point2> = (0..5)
        .map(|j| {
            let t = std::f64::consts::FRAC_PI_2 + std::f64::consts::TAU * (2 * j) as f64 / 5.0;
            Point2::new(t.cos(), t.sin())
        })
        .collect();
    assert!(!brute_is_simple(&pentagram));
    assert!(!is_simple(&Polygon::new(pentagram).unwrap()));
}

#[test]
fn hull_of_random_points_is_strictly_convex() {
    let mut rng = rng(17);
    for _ in 0..20 {
        let pts: Vec<Point2> = (0..100)
            .map(|_| Point2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let hull = convex_hull(pts);
        assert!(brute_is_strictly_convex(&hull));
        let poly = Polygon::new(hull.clone()).unwrap();
        assert!(is_strictly_convex(&poly));
        assert!(!is_strictly_convex(&poly.reversed()));
        assert!(!is_strictly_convex(&poly.reversed().rotated(3)));
    }
}

#[test]
fn convexity_matches_all_triples_on_grid() {
    let mut rng = rng(23);
    let mut convex = 0;
    for _ in 0..20_000 {
        let n = rng.random_range(3..=6);
        let pts: Vec<Point2> = (0..n)
            .map(|_| {
                Point2::new(
                    rng.random_range(0..=3) as f64,
                    rng.random_range(0..=3) as f64,
                )
            })
            .collect();
        let Ok(poly) = Polygon::new(pts.clone()) else {
            continue;
        };
        // All-triples CCW for some rotation of the vertex list.
        let expected = (0..n).any(|k| {
            let rotated: Vec<Point2> = (0..n).map(|i| pts[(i + k) % n]).collect();
            brute_is_strictly_convex(&rotated)
        });
        assert_eq!(is_strictly_convex(&poly), expected, "{pts:?}");
        convex += usize::from(expected);
    }
    assert!(convex > 200, "{convex}");
}

#[test]
fn shoelace_of_clockwise_twelve_gon() {
    let mut rng = rng(29);
    let ccw = radial_polygon(rng.random(), 12, 0.5);
    let cw = ccw.reversed();
    let exact = exact_twice_area(cw.vertices());
    assert!(exact < 0.into());
    let expected = unscale(&exact) / 2.0;
    assert!((cw.signed_area() - expected).abs() <= 1e-14 * expected.abs());
    assert_eq!(cw.orientation(), Orientation::Cw);
    let fixed = normalize_ccw(&cw).unwrap();
    assert_eq!(fixed.vertex(0), cw.vertex(0));
    assert_eq!(fixed.orientation(), Orientation::Ccw);
    assert_eq!(exact_twice_area(fixed.vertices()), -exact);
}

#[test]
fn interior_angle_agrees_with_exact_turn() {
    let mut rng = rng(31);
    for _ in 0..20_000 {
        let mut p = || {
            Point2::new(
                rng.random_range(-3..=3) as f64,
                rng.random_range(-3..=3) as f64,
            )
        };
        let (prev, v, next) = (p(), p(), p());
        if prev == v || v == next {
            continue;
        }
        let angle = interior_angle(prev, v, next);
        assert!((0.0..std::f64::consts::TAU).contains(&angle));
        match exact_orient(prev, v, next) {
            Orientation::Ccw => assert!(angle < std::f64::consts::PI, "{prev} {v} {next}"),
            Orientation::Cw => assert!(angle > std::f64::consts::PI, "{prev} {v} {next}"),
            Orientation::Collinear => assert!(angle == 0.0 || angle == std::f64::consts::PI),
        }
    }
}

#[test]
fn fixed_point_conversion_is_exact() {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let mut rng = rng(37);
    let scale = BigRational::from_integer(BigInt::from(1) << 1074usize);
    let specials = [
        0.0,
        -0.0,
        f64::MIN_POSITIVE,
        f64::from_bits(1),
        -f64::from_bits(7),
        f64::MAX,
        -1.5,
        1e-300,
    ];
    let randoms = (0..2000).map(|_| {
        f64::from_bits(
            rng.random::<u64>() & !(0x7ffu64 << 52) | (rng.random_range(0..0x7ffu64) << 52),
        )
    });
    for x in specials.into_iter().chain(randoms) {
        let expected = BigRational::from_float(x).unwrap() * &scale;
        assert_eq!(BigRational::from_integer(fixed(x)), expected, "{x:e}");
    }
}
