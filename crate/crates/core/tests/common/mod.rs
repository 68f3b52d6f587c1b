//! Brute-force oracles shared by the integration tests. None of these call
//! into the code paths they are used to check.

#![allow(dead_code)]

use fifcover::{AffineMap, Point};

/// Supremum of `rho(f p, f q) / rho(p, q)` by brute force.
///
/// Pairs with equal abscissas give exactly `d`; the others reduce to
/// `(a + theta |c + d t|) / (1 + theta |t|)` over slopes `t`, scanned on a
/// grid of 10^6 slopes in `[-1e4, 1e4]` plus the candidates `0` and `-c/d`.
pub fn lipschitz_oracle(map: &AffineMap, theta: f64) -> f64 {
    let ratio = |t: f64| (map.a + theta * (map.c + map.d * t).abs()) / (1.0 + theta * t.abs());
    let mut best = map.d.max(ratio(0.0));
    if map.d > 0.0 {
        best = best.max(ratio(-map.c / map.d));
    }
    const SAMPLES: usize = 1_000_000;
    for i in 0..SAMPLES {
        let t = -1e4 + 2e4 * i as f64 / (SAMPLES - 1) as f64;
        best = best.max(ratio(t));
    }
    best
}

pub fn weighted(p: Point, q: Point, theta: f64) -> f64 {
    (p.x - q.x).abs() + theta * (p.y - q.y).abs()
}

/// All-pairs maximum of the weighted distance.
pub fn diameter_brute(points: &[Point], theta: f64) -> f64 {
    let mut best = 0.0_f64;
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            best = best.max(weighted(p, q, theta));
        }
    }
    best
}

pub fn euclidean_diameter_brute(points: &[Point]) -> f64 {
    let mut best = 0.0_f64;
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            best = best.max(((p.x - q.x).powi(2) + (p.y - q.y).powi(2)).sqrt());
        }
    }
    best
}

/// Distance from `p` to the closed ball, via `samples` points on its boundary.
/// Returns the sampled minimum together with the sampling resolution.
pub fn ball_distance_sampled(p: Point, center: Point, radius: f64, theta: f64, samples: usize) -> (f64, f64) {
    if weighted(p, center, theta) <= radius {
        return (0.0, 0.0);
    }
    let h = radius / theta;
    let corners = [
        Point::new(center.x + radius, center.y),
        Point::new(center.x, center.y + h),
        Point::new(center.x - radius, center.y),
        Point::new(center.x, center.y - h),
    ];
    let per_edge = samples / 4;
    let mut best = f64::INFINITY;
    for e in 0..4 {
        let (a, b) = (corners[e], corners[(e + 1) % 4]);
        for j in 0..per_edge {
            let t = j as f64 / per_edge as f64;
            let q = Point::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
            best = best.min(weighted(p, q, theta));
        }
    }
    // each edge has weighted length 2r
    (best, 2.0 * radius / per_edge as f64)
}

/// Nested application `f_{k_1}(f_{k_2}(... f_{k_m}(p)))` with 1-based letters.
pub fn apply_nested(maps: &[AffineMap], letters: &[usize], p: Point) -> Point {
    letters.iter().rev().fold(p, |q, &k| {
        let m = &maps[k - 1];
        Point::new(m.a * q.x + m.b, m.c * q.x + m.d * q.y + m.e)
    })
}

/// `d_{k_1} (d_{k_2} (... d_{k_m}))`, the association order of the right fold.
pub fn d_product(maps: &[AffineMap], letters: &[usize]) -> f64 {
    let (&last, rest) = letters.split_last().unwrap();
    rest.iter().rev().fold(maps[last - 1].d, |acc, &k| maps[k - 1].d * acc)
}

pub fn rel_close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs().max(1.0)
}
