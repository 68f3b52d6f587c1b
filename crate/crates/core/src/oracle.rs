//! Independent samples of the attractor, used to check coverings.

use kiddo::{ImmutableKdTree, Manhattan};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::compose_all;
use crate::covering::{Covering, Rhombus};
use crate::error::{Error, Result};
use crate::model::{FifSystem, Point};

pub const DEFAULT_BURN_IN: usize = 100;

/// Boundary points per rhombus used by [`hausdorff_estimate`].
pub const BOUNDARY_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleMethod {
    ChaosGame,
    DeterministicDepth(usize),
}

/// A finite approximation of the attractor.
#[derive(Debug, Clone, PartialEq)]
pub struct AttractorSample {
    pub points: Vec<Point>,
    pub seed: u64,
    pub burn_in: usize,
    pub method: SampleMethod,
}

impl AttractorSample {
    pub fn from_points(points: Vec<Point>) -> Self {
        AttractorSample {
            points,
            seed: 0,
            burn_in: 0,
            method: SampleMethod::ChaosGame,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Random iteration from `(x_0, y_0)`, picking map `k` with probability `a_k`.
///
/// Uses ChaCha8 seeded with `seed`, so a given seed always yields the same points.
pub fn chaos_game(system: &FifSystem, n_points: usize, seed: u64, burn_in: usize) -> AttractorSample {
    let maps = system.maps();
    let chooser = WeightedIndex::new(maps.iter().map(|m| m.a)).expect("a_k are positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = system.data().point(0);
    for _ in 0..burn_in {
        p = maps[chooser.sample(&mut rng)].apply(p);
    }
    let points = (0..n_points)
        .map(|_| {
            p = maps[chooser.sample(&mut rng)].apply(p);
            p
        })
        .collect();
    AttractorSample {
        points,
        seed,
        burn_in,
        method: SampleMethod::ChaosGame,
    }
}

/// Images of the chord `(x_0, y_0) - (x_n, y_n)` under every composed map of depth `depth`.
///
/// The chord is discretized into `samples_per_segment` evenly spaced points
/// including both ends (a single sample means the left end only). Output is
/// grouped by word in lexicographic order.
pub fn deterministic_iterate(
    system: &FifSystem,
    depth: usize,
    samples_per_segment: usize,
    cap: usize,
) -> Result<AttractorSample> {
    let maps = compose_all(system, depth, cap)?;
    let data = system.data();
    let (p0, p1) = (data.point(0), data.point(data.n_maps()));
    let chord: Vec<Point> = (0..samples_per_segment)
        .map(|j| {
            if samples_per_segment == 1 {
                return p0;
            }
            let t = j as f64 / (samples_per_segment - 1) as f64;
            Point::new(p0.x + t * (p1.x - p0.x), p0.y + t * (p1.y - p0.y))
        })
        .collect();
    let points = maps
        .par_iter()
        .flat_map_iter(|m| chord.iter().map(move |&p| m.apply(p)))
        .collect();
    Ok(AttractorSample {
        points,
        seed: 0,
        burn_in: 0,
        method: SampleMethod::DeterministicDepth(depth),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContainmentReport {
    pub checked: usize,
    pub violations: usize,
    /// Largest distance from a sample point to the covering (0 when all are inside).
    pub max_excess: f64,
}

/// Counts sample points farther than `tol` from every rhombus.
pub fn verify_containment(sample: &AttractorSample, covering: &Covering, tol: f64) -> ContainmentReport {
    if sample.is_empty() || covering.is_empty() {
        return ContainmentReport {
            checked: sample.len(),
            violations: if covering.is_empty() { sample.len() } else { 0 },
            max_excess: if sample.is_empty() { 0.0 } else { f64::INFINITY },
        };
    }
    let index = covering.index();
    let (violations, max_excess) = sample
        .points
        .par_iter()
        .map(|&p| {
            if index.contains(p, tol) {
                (0usize, index.distance(p))
            } else {
                (1, index.distance(p))
            }
        })
        .reduce(|| (0, 0.0), |a, b| (a.0 + b.0, a.1.max(b.1)));
    ContainmentReport {
        checked: sample.len(),
        violations,
        max_excess,
    }
}

/// The two directed distances between a covering and a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HausdorffEstimate {
    /// Largest distance from a sample point to the covering.
    pub sample_to_covering: f64,
    /// Largest distance from a discretized rhombus point to the nearest sample point.
    pub covering_to_sample: f64,
}

impl HausdorffEstimate {
    pub fn value(&self) -> f64 {
        self.sample_to_covering.max(self.covering_to_sample)
    }
}

/// Estimate of the Hausdorff distance between the covering and the attractor, in the weighted metric.
///
/// Each rhombus is discretized into its four vertices, its center and
/// [`BOUNDARY_SAMPLES`] boundary points.
pub fn hausdorff_estimate(covering: &Covering, sample: &AttractorSample) -> Result<HausdorffEstimate> {
    hausdorff_estimate_with_resolution(covering, sample, BOUNDARY_SAMPLES)
}

pub fn hausdorff_estimate_with_resolution(
    covering: &Covering,
    sample: &AttractorSample,
    boundary_samples: usize,
) -> Result<HausdorffEstimate> {
    if sample.is_empty() {
        return Err(Error::TooFewPoints { points: 0 });
    }
    let theta = covering.theta();
    let index = covering.index();
    let sample_to_covering = sample
        .points
        .par_iter()
        .map(|&p| index.distance(p))
        .reduce(|| 0.0, f64::max);

    // in (u, theta v) coordinates the weighted metric is plain L1
    let scaled: Vec<[f64; 2]> = sample.points.iter().map(|p| [p.x, theta * p.y]).collect();
    let tree: ImmutableKdTree<f64, 2> = ImmutableKdTree::new_from_slice(&scaled);
    let nearest = |p: Point| tree.nearest_one::<Manhattan>(&[p.x, theta * p.y]).distance;

    let covering_to_sample = covering
        .rhombi()
        .collect::<Vec<&Rhombus>>()
        .par_iter()
        .map(|r| {
            let mut worst = nearest(r.center);
            for v in r.vertices() {
                worst = worst.max(nearest(v));
            }
            for j in 0..boundary_samples {
                let t = 4.0 * j as f64 / boundary_samples as f64;
                worst = worst.max(nearest(r.boundary_point(t)));
            }
            worst
        })
        .reduce(|| 0.0, f64::max);

    Ok(HausdorffEstimate {
        sample_to_covering,
        covering_to_sample,
    })
}
