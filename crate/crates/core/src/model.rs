//! Interpolation data and the affine iterated function system built from it.
//!
//! For data points `(x_0, y_0), ..., (x_n, y_n)` with `x_0 < ... < x_n` and
//! vertical scaling factors `d_k` in `[0, 1)`, map `k` is
//!
//! ```text
//! f_k(x, y) = (a_k x + b_k, c_k x + d_k y + e_k)
//! ```
//!
//! with coefficients chosen so that `f_k` sends the end points of the data to
//! `(x_{k-1}, y_{k-1})` and `(x_k, y_k)`. The attractor of the system is the
//! graph of the fractal interpolation function through the data.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point { x, y }
    }
}

/// Validated interpolation data: `n + 1` points and `n` vertical scaling factors.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationData {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ds: Vec<f64>,
}

impl InterpolationData {
    /// Checks the data invariants and wraps the arrays.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>, ds: Vec<f64>) -> Result<Self> {
        validate_data(&xs, &ys, &ds)?;
        Ok(InterpolationData { xs, ys, ds })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn ds(&self) -> &[f64] {
        &self.ds
    }

    /// Number of maps, `n`.
    pub fn n_maps(&self) -> usize {
        self.ds.len()
    }

    /// Left end of the interpolation interval, `x_0`.
    pub fn a(&self) -> f64 {
        self.xs[0]
    }

    /// Right end of the interpolation interval, `x_n`.
    pub fn b(&self) -> f64 {
        self.xs[self.xs.len() - 1]
    }

    pub fn width(&self) -> f64 {
        self.b() - self.a()
    }

    pub fn point(&self, k: usize) -> Point {
        Point::new(self.xs[k], self.ys[k])
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.xs.iter().zip(&self.ys).map(|(&x, &y)| Point::new(x, y))
    }

    pub fn y_min(&self) -> f64 {
        self.ys.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn y_max(&self) -> f64 {
        self.ys.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Checks lengths, finiteness, ordering of the abscissas and the range of the scaling factors.
pub fn validate_data(xs: &[f64], ys: &[f64], ds: &[f64]) -> Result<()> {
    if ys.len() != xs.len() {
        return Err(Error::LengthMismatch {
            field: "y",
            expected: xs.len(),
            got: ys.len(),
        });
    }
    if xs.len() < 3 {
        return Err(Error::TooFewPoints { points: xs.len() });
    }
    if ds.len() != xs.len() - 1 {
        return Err(Error::LengthMismatch {
            field: "d",
            expected: xs.len() - 1,
            got: ds.len(),
        });
    }
    for (field, values) in [("x", xs), ("y", ys), ("d", ds)] {
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue { field, index });
        }
    }
    if let Some(index) = xs.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::NonIncreasingAbscissas {
            index,
            prev: xs[index],
            next: xs[index + 1],
        });
    }
    if let Some(index) = ds.iter().position(|d| !(0.0..1.0).contains(d)) {
        return Err(Error::ScalingOutOfRange {
            index,
            value: ds[index],
        });
    }
    Ok(())
}

/// `(x, y) -> (a x + b, c x + d y + e)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
        e: 0.0,
    };

    pub const fn new(a: f64, b: f64, c: f64, d: f64, e: f64) -> Self {
        AffineMap { a, b, c, d, e }
    }

    #[inline]
    pub fn apply(&self, p: Point) -> Point {
        Point::new(
            self.a * p.x + self.b,
            self.c * p.x + self.d * p.y + self.e,
        )
    }

    /// `self ∘ inner`, i.e. `inner` is applied first.
    ///
    /// Evaluates the coefficient recursion with a fixed association order so
    /// that every caller composing the same word gets bit-identical results.
    #[inline]
    pub fn then_after(&self, inner: &AffineMap) -> AffineMap {
        AffineMap {
            a: self.a * inner.a,
            b: self.a * inner.b + self.b,
            c: self.c * inner.a + self.d * inner.c,
            d: self.d * inner.d,
            e: self.c * inner.b + self.d * inner.e + self.e,
        }
    }
}

/// Free-function form of [`AffineMap::apply`].
pub fn apply_map(map: &AffineMap, p: Point) -> Point {
    map.apply(p)
}

/// The `n` base maps together with the metric weight `theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct FifSystem {
    maps: Vec<AffineMap>,
    theta: f64,
    data: InterpolationData,
}

impl FifSystem {
    pub fn maps(&self) -> &[AffineMap] {
        &self.maps
    }

    /// Base map with 1-based index `k`.
    pub fn map(&self, k: usize) -> &AffineMap {
        &self.maps[k - 1]
    }

    pub fn n_maps(&self) -> usize {
        self.maps.len()
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn data(&self) -> &InterpolationData {
        &self.data
    }
}

/// Builds the base maps and `theta` from validated data.
pub fn build_system(data: InterpolationData) -> FifSystem {
    let xs = &data.xs;
    let ys = &data.ys;
    let n = data.n_maps();
    let (x0, xn) = (xs[0], xs[n]);
    let (y0, yn) = (ys[0], ys[n]);
    let width = xn - x0;

    let maps: Vec<AffineMap> = (1..=n)
        .map(|k| {
            let d = data.ds[k - 1];
            AffineMap {
                a: (xs[k] - xs[k - 1]) / width,
                b: (xn * xs[k - 1] - x0 * xs[k]) / width,
                c: (ys[k] - ys[k - 1]) / width - d * (yn - y0) / width,
                d,
                e: (xn * ys[k - 1] - x0 * ys[k]) / width - d * (xn * y0 - x0 * yn) / width,
            }
        })
        .collect();

    let max_c = maps.iter().map(|m| m.c.abs()).fold(0.0, f64::max);
    let theta = if max_c == 0.0 {
        1.0
    } else {
        let max_a = maps.iter().map(|m| m.a).fold(0.0, f64::max);
        (1.0 - max_a) / (2.0 * max_c)
    };

    FifSystem { maps, theta, data }
}

impl TryFrom<(Vec<f64>, Vec<f64>, Vec<f64>)> for FifSystem {
    type Error = Error;

    fn try_from((xs, ys, ds): (Vec<f64>, Vec<f64>, Vec<f64>)) -> Result<Self> {
        InterpolationData::new(xs, ys, ds).map(build_system)
    }
}
