//! Rhombus coverings of the interpolant's graph and the range bounds they imply.
//!
//! Closed balls of the weighted metric `|du| + theta |dv|` are rhombi with
//! horizontal half-diagonal `r` and vertical half-diagonal `r / theta`. For
//! the depth-`m` system (all `n^m` compositions of the base maps) every
//! composed map contributes one rhombus centered at its fixed point. The
//! union contains the graph, so the lowest and highest rhombus tips bound the
//! range of the interpolant.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{compose_all, fixed_point_unchecked, lipschitz_constant, rho_distance, Word};
use crate::error::{Error, Result};
use crate::model::{FifSystem, Point};

/// How radii and the diameter bound are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Sorted constants, weighted-metric diameter, `(1 + s_N)` factor for non-maximal maps.
    Theorem,
    /// Replays the published MATLAB `radiuses` routine, including its departures
    /// from the covering theorem. Not guaranteed to contain the graph.
    Appendix,
}

impl Mode {
    pub const ALL: [Mode; 2] = [Mode::Theorem, Mode::Appendix];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Theorem => "theorem",
            Mode::Appendix => "appendix",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "theorem" => Ok(Mode::Theorem),
            "appendix" | "appendix-compat" => Ok(Mode::Appendix),
            other => Err(format!("unknown mode `{other}` (expected theorem|appendix)")),
        }
    }
}

/// Departures of [`Mode::Appendix`] from the covering theorem, recorded in its output.
pub const APPENDIX_DEVIATIONS: [&str; 3] = [
    "diameter bound uses the Euclidean distance between fixed points instead of the weighted metric",
    "non-maximal maps use the factor (1 + s_i) instead of (1 + s_max)",
    "Lipschitz constants are taken in word order, not sorted; the last word plays the role of the maximal map",
];

/// Closed ball `{p : |p.x - u| + theta |p.y - v| <= r}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rhombus {
    pub center: Point,
    pub radius: f64,
    pub theta: f64,
}

impl Rhombus {
    pub fn new(center: Point, radius: f64, theta: f64) -> Self {
        Rhombus {
            center,
            radius,
            theta,
        }
    }

    /// `V1 (u + r, v)`, `V2 (u - r, v)`, `V3 (u, v + r/theta)`, `V4 (u, v - r/theta)`.
    pub fn vertices(&self) -> [Point; 4] {
        let Point { x, y } = self.center;
        let (r, h) = (self.radius, self.half_height());
        [
            Point::new(x + r, y),
            Point::new(x - r, y),
            Point::new(x, y + h),
            Point::new(x, y - h),
        ]
    }

    pub fn half_height(&self) -> f64 {
        self.radius / self.theta
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        rho_distance(p, self.center, self.theta) <= self.radius + tol
    }

    /// Weighted-metric distance from `p` to the ball; zero inside.
    #[inline]
    pub fn distance_to(&self, p: Point) -> f64 {
        (rho_distance(p, self.center, self.theta) - self.radius).max(0.0)
    }

    /// Lowest and highest ordinate reached by the ball.
    pub fn vertical_span(&self) -> (f64, f64) {
        let h = self.half_height();
        (self.center.y - h, self.center.y + h)
    }

    /// Point on the boundary at parameter `t` in `[0, 4)`, walking
    /// `V1 -> V3 -> V2 -> V4 -> V1` with one unit of `t` per edge.
    pub fn boundary_point(&self, t: f64) -> Point {
        let [v1, v2, v3, v4] = self.vertices();
        let path = [v1, v3, v2, v4, v1];
        let edge = (t.floor() as usize).min(3);
        let f = t - edge as f64;
        let (p, q) = (path[edge], path[edge + 1]);
        Point::new(p.x + (q.x - p.x) * f, p.y + (q.y - p.y) * f)
    }
}

/// One rhombus of a covering together with the Lipschitz constant of its map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverEntry {
    pub rhombus: Rhombus,
    pub lipschitz: f64,
}

/// `Im f ⊆ [lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RangeBounds {
    #[serde(rename = "A")]
    pub lower: f64,
    #[serde(rename = "B")]
    pub upper: f64,
}

impl RangeBounds {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn half_width(&self) -> f64 {
        0.5 * self.width()
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// `[x_0, x_n] × [A, B]`, a box containing the whole graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphBox {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

/// The rhombi of the depth-`m` system, in lexicographic word order.
#[derive(Debug, Clone)]
pub struct Covering {
    n: usize,
    depth: usize,
    theta: f64,
    mode: Mode,
    entries: Vec<CoverEntry>,
    big_m: f64,
    s_sorted: Vec<f64>,
    bounds: RangeBounds,
    x_range: (f64, f64),
}

impl Covering {
    /// Assembles a covering from precomputed rhombi, recomputing the range bounds.
    ///
    /// Used when reading coverings back from disk; `entries` must be in word order.
    pub fn from_parts(
        n: usize,
        depth: usize,
        mode: Mode,
        theta: f64,
        big_m: f64,
        entries: Vec<CoverEntry>,
        x_range: (f64, f64),
    ) -> Self {
        let mut s_sorted: Vec<f64> = entries.iter().map(|e| e.lipschitz).collect();
        s_sorted.sort_by(f64::total_cmp);
        let bounds = range_bounds_of(&entries);
        Covering {
            n,
            depth,
            theta,
            mode,
            entries,
            big_m,
            s_sorted,
            bounds,
            x_range,
        }
    }

    pub fn n_maps(&self) -> usize {
        self.n
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn entries(&self) -> &[CoverEntry] {
        &self.entries
    }

    pub fn rhombi(&self) -> impl ExactSizeIterator<Item = &Rhombus> + '_ {
        self.entries.iter().map(|e| &e.rhombus)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Word generating the `i`-th rhombus.
    pub fn word(&self, i: usize) -> Word {
        Word::from_index(i, self.n, self.depth)
    }

    /// Diameter bound `M` (weighted in theorem mode, Euclidean in appendix mode).
    pub fn big_m(&self) -> f64 {
        self.big_m
    }

    pub fn s_sorted(&self) -> &[f64] {
        &self.s_sorted
    }

    pub fn bounds(&self) -> RangeBounds {
        self.bounds
    }

    pub fn graph_box(&self) -> GraphBox {
        GraphBox {
            x_min: self.x_range.0,
            x_max: self.x_range.1,
            y_min: self.bounds.lower,
            y_max: self.bounds.upper,
        }
    }

    pub fn x_range(&self) -> (f64, f64) {
        self.x_range
    }

    /// Departures from the covering theorem carried by this covering's mode.
    pub fn deviations(&self) -> &'static [&'static str] {
        match self.mode {
            Mode::Theorem => &[],
            Mode::Appendix => &APPENDIX_DEVIATIONS,
        }
    }

    /// Rough heap footprint of a covering with `count` rhombi, for reporting before a build.
    pub fn estimated_bytes(count: usize) -> usize {
        // composed maps, fixed points, constants, radii, sort order and entries
        count
            * (std::mem::size_of::<crate::model::AffineMap>()
                + 2 * std::mem::size_of::<Point>()
                + 3 * std::mem::size_of::<f64>()
                + std::mem::size_of::<usize>()
                + std::mem::size_of::<CoverEntry>())
    }

    /// Grid index for fast containment and distance queries.
    pub fn index(&self) -> CoveringIndex<'_> {
        CoveringIndex::new(self)
    }
}

/// Exact maximum pairwise weighted distance, in O(N).
///
/// In the rotated coordinates `p = u + theta v`, `q = u - theta v` the
/// weighted metric is the Chebyshev distance `max(|dp|, |dq|)`, so its
/// diameter is the larger of the two coordinate spreads.
pub fn max_pairwise_distance(points: &[Point], theta: f64) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            points: points.len(),
        });
    }
    let (mut p_lo, mut p_hi, mut q_lo, mut q_hi) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for pt in points {
        let p = pt.x + theta * pt.y;
        let q = pt.x - theta * pt.y;
        p_lo = p_lo.min(p);
        p_hi = p_hi.max(p);
        q_lo = q_lo.min(q);
        q_hi = q_hi.max(q);
    }
    Ok((p_hi - p_lo).max(q_hi - q_lo))
}

/// Maximum pairwise Euclidean distance (convex hull, then all hull pairs).
pub fn max_pairwise_euclidean(points: &[Point]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            points: points.len(),
        });
    }
    let hull = convex_hull(points);
    let mut best = 0.0_f64;
    for (i, p) in hull.iter().enumerate() {
        for q in &hull[i + 1..] {
            best = best.max((p.x - q.x).hypot(p.y - q.y));
        }
    }
    Ok(best)
}

// Andrew's monotone chain; keeps collinear boundary points out.
fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: Point, a: Point, b: Point| (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Builds the depth-`depth` covering. `cap` bounds the number of composed maps.
pub fn build_covering(system: &FifSystem, depth: usize, mode: Mode, cap: usize) -> Result<Covering> {
    let theta = system.theta();
    let maps = compose_all(system, depth, cap)?;
    let (centers, s): (Vec<Point>, Vec<f64>) = maps
        .par_iter()
        .map(|m| (fixed_point_unchecked(m), lipschitz_constant(m, theta)))
        .unzip();
    drop(maps);
    let count = s.len();

    let mut order: Vec<usize> = (0..count).collect();
    // stable, so ties keep lexicographic word order
    order.par_sort_by(|&i, &j| s[i].total_cmp(&s[j]));
    let s_sorted: Vec<f64> = order.iter().map(|&i| s[i]).collect();

    let (big_m, radii) = match mode {
        Mode::Theorem => {
            let big_m = max_pairwise_distance(&centers, theta)?;
            let top = order[count - 1];
            let s_max = s_sorted[count - 1];
            let s_next = s_sorted[count - 2];
            let denom = 1.0 - s_next * s_max;
            let radii: Vec<f64> = (0..count)
                .into_par_iter()
                .map(|i| {
                    if i == top {
                        big_m * s_max * (1.0 + s_next) / denom
                    } else {
                        big_m * s[i] * (1.0 + s_max) / denom
                    }
                })
                .collect();
            (big_m, radii)
        }
        Mode::Appendix => {
            let big_m = max_pairwise_euclidean(&centers)?;
            let s_last = s[count - 1];
            let s_second = s[count - 2];
            let denom = 1.0 - s_last * s_second;
            let radii: Vec<f64> = (0..count)
                .into_par_iter()
                .map(|i| {
                    if i == count - 1 {
                        s_last * big_m * (1.0 + s_second) / denom
                    } else {
                        s[i] * big_m * (1.0 + s[i]) / denom
                    }
                })
                .collect();
            (big_m, radii)
        }
    };

    let entries: Vec<CoverEntry> = centers
        .into_par_iter()
        .zip(radii)
        .zip(s)
        .map(|((center, radius), lipschitz)| CoverEntry {
            rhombus: Rhombus::new(center, radius, theta),
            lipschitz,
        })
        .collect();
    let bounds = range_bounds_of(&entries);
    let data = system.data();

    Ok(Covering {
        n: system.n_maps(),
        depth,
        theta,
        mode,
        entries,
        big_m,
        s_sorted,
        bounds,
        x_range: (data.a(), data.b()),
    })
}

fn range_bounds_of(entries: &[CoverEntry]) -> RangeBounds {
    entries.iter().fold(
        RangeBounds {
            lower: f64::INFINITY,
            upper: f64::NEG_INFINITY,
        },
        |acc, e| {
            let (lo, hi) = e.rhombus.vertical_span();
            RangeBounds {
                lower: acc.lower.min(lo),
                upper: acc.upper.max(hi),
            }
        },
    )
}

/// `A = min (v_i - r_i / theta)`, `B = max (v_i + r_i / theta)`.
pub fn range_bounds(covering: &Covering) -> RangeBounds {
    range_bounds_of(&covering.entries)
}

pub fn rhombus_vertices(r: &Rhombus) -> [Point; 4] {
    r.vertices()
}

pub fn rhombus_contains(r: &Rhombus, p: Point, tol: f64) -> bool {
    r.contains(p, tol)
}

/// `min_i max(0, rho(p, center_i) - r_i)` by a linear scan. Infinite for an empty covering.
pub fn point_to_covering_distance(p: Point, covering: &Covering) -> f64 {
    covering
        .rhombi()
        .map(|r| r.distance_to(p))
        .fold(f64::INFINITY, f64::min)
}

/// Uniform grid over rhombus bounding boxes.
///
/// Answers "is `p` inside some rhombus" from a single cell; exact distances
/// for points outside every rhombus fall back to a full scan.
pub struct CoveringIndex<'a> {
    covering: &'a Covering,
    origin: Point,
    cell: (f64, f64),
    dims: (usize, usize),
    cells: Vec<Vec<u32>>,
    large: Vec<u32>,
}

const MAX_CELLS_PER_RHOMBUS: usize = 64;

impl<'a> CoveringIndex<'a> {
    fn new(covering: &'a Covering) -> Self {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for r in covering.rhombi() {
            let h = r.half_height();
            lo.x = lo.x.min(r.center.x - r.radius);
            lo.y = lo.y.min(r.center.y - h);
            hi.x = hi.x.max(r.center.x + r.radius);
            hi.y = hi.y.max(r.center.y + h);
        }
        let side = ((covering.len() as f64).sqrt().ceil() as usize).clamp(1, 1024);
        let dims = (side, side);
        let cell = (
            ((hi.x - lo.x) / side as f64).max(f64::MIN_POSITIVE),
            ((hi.y - lo.y) / side as f64).max(f64::MIN_POSITIVE),
        );
        let mut index = CoveringIndex {
            covering,
            origin: lo,
            cell,
            dims,
            cells: vec![Vec::new(); side * side],
            large: Vec::new(),
        };
        if covering.is_empty() {
            return index;
        }
        for (i, r) in covering.rhombi().enumerate() {
            let h = r.half_height();
            let (cx0, cy0) = index.cell_of(Point::new(r.center.x - r.radius, r.center.y - h));
            let (cx1, cy1) = index.cell_of(Point::new(r.center.x + r.radius, r.center.y + h));
            if (cx1 - cx0 + 1) * (cy1 - cy0 + 1) > MAX_CELLS_PER_RHOMBUS {
                index.large.push(i as u32);
                continue;
            }
            for cy in cy0..=cy1 {
                for cx in cx0..=cx1 {
                    index.cells[cy * dims.0 + cx].push(i as u32);
                }
            }
        }
        index
    }

    fn cell_of(&self, p: Point) -> (usize, usize) {
        let fx = ((p.x - self.origin.x) / self.cell.0).floor();
        let fy = ((p.y - self.origin.y) / self.cell.1).floor();
        (
            (fx.max(0.0) as usize).min(self.dims.0 - 1),
            (fy.max(0.0) as usize).min(self.dims.1 - 1),
        )
    }

    /// Rhombi whose bounding box may contain `p`.
    fn candidates(&self, p: Point) -> impl Iterator<Item = &Rhombus> + '_ {
        let (cx, cy) = self.cell_of(p);
        let entries = self.covering.entries();
        self.cells[cy * self.dims.0 + cx]
            .iter()
            .chain(&self.large)
            .map(move |&i| &entries[i as usize].rhombus)
    }

    /// True if some rhombus contains `p` within `tol`.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.candidates(p).any(|r| r.contains(p, tol))
            || (tol > 0.0 && self.covering.rhombi().any(|r| r.contains(p, tol)))
    }

    /// Same value as [`point_to_covering_distance`].
    pub fn distance(&self, p: Point) -> f64 {
        if self.candidates(p).any(|r| r.contains(p, 0.0)) {
            0.0
        } else {
            point_to_covering_distance(p, self.covering)
        }
    }
}

/// One row of a published range table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub depth: usize,
    #[serde(rename = "A")]
    pub lower: f64,
    #[serde(rename = "B")]
    pub upper: f64,
}

impl ReferenceRow {
    pub fn bounds(&self) -> RangeBounds {
        RangeBounds {
            lower: self.lower,
            upper: self.upper,
        }
    }
}

/// Published `(A_m, B_m)` values for one dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceTable {
    pub format_version: u32,
    pub name: String,
    pub source: String,
    pub rows: Vec<ReferenceRow>,
}

impl ReferenceTable {
    pub fn row(&self, depth: usize) -> Option<&ReferenceRow> {
        self.rows.iter().find(|r| r.depth == depth)
    }
}

/// Deviation of one computed interval from its reference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Discrepancy {
    pub depth: usize,
    pub mode: Mode,
    pub computed: RangeBounds,
    pub reference: RangeBounds,
    pub abs_dev_lower: f64,
    pub abs_dev_upper: f64,
    pub rel_dev_lower: f64,
    pub rel_dev_upper: f64,
    pub half_width_abs_dev: f64,
    pub half_width_rel_dev: f64,
    pub midpoint_abs_dev: f64,
}

impl Discrepancy {
    pub fn new(depth: usize, mode: Mode, computed: RangeBounds, reference: RangeBounds) -> Self {
        let rel = |dev: f64, base: f64| if base == 0.0 { if dev == 0.0 { 0.0 } else { f64::INFINITY } } else { dev / base.abs() };
        let abs_dev_lower = (computed.lower - reference.lower).abs();
        let abs_dev_upper = (computed.upper - reference.upper).abs();
        let half_width_abs_dev = (computed.half_width() - reference.half_width()).abs();
        Discrepancy {
            depth,
            mode,
            computed,
            reference,
            abs_dev_lower,
            abs_dev_upper,
            rel_dev_lower: rel(abs_dev_lower, reference.lower),
            rel_dev_upper: rel(abs_dev_upper, reference.upper),
            half_width_abs_dev,
            half_width_rel_dev: rel(half_width_abs_dev, reference.half_width()),
            midpoint_abs_dev: (computed.midpoint() - reference.midpoint()).abs(),
        }
    }
}

/// Per-depth, per-mode comparison against a reference table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscrepancyReport {
    pub name: String,
    pub source: String,
    pub rows: Vec<Discrepancy>,
    /// Depths that were computed but have no reference row.
    pub missing: Vec<usize>,
}

impl DiscrepancyReport {
    pub fn get(&self, depth: usize, mode: Mode) -> Option<&Discrepancy> {
        self.rows.iter().find(|d| d.depth == depth && d.mode == mode)
    }

    /// Smallest half-width deviation over the modes present at `depth`.
    pub fn best_half_width_rel_dev(&self, depth: usize) -> Option<f64> {
        self.rows
            .iter()
            .filter(|d| d.depth == depth)
            .map(|d| d.half_width_rel_dev)
            .min_by(f64::total_cmp)
    }
}

/// Compares computed bounds (any mix of depths and modes) against `reference`. Never fails.
pub fn compare_with_reference(
    computed: &[(usize, Mode, RangeBounds)],
    reference: &ReferenceTable,
) -> DiscrepancyReport {
    let mut rows = Vec::new();
    let mut missing = Vec::new();
    for &(depth, mode, bounds) in computed {
        match reference.row(depth) {
            Some(row) => rows.push(Discrepancy::new(depth, mode, bounds, row.bounds())),
            None => missing.push(depth),
        }
    }
    missing.dedup();
    DiscrepancyReport {
        name: reference.name.clone(),
        source: reference.source.clone(),
        rows,
        missing,
    }
}

impl fmt::Display for DiscrepancyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# reference: {} ({})", self.name, self.source)?;
        writeln!(
            f,
            "{:>5} {:>9} {:>12} {:>12} {:>12} {:>12} {:>10} {:>10} {:>10} {:>10}",
            "m", "mode", "A", "B", "A_ref", "B_ref", "|dA|", "|dB|", "hw_rel", "|dmid|"
        )?;
        for d in &self.rows {
            writeln!(
                f,
                "{:>5} {:>9} {:>12.4} {:>12.4} {:>12.4} {:>12.4} {:>10.4} {:>10.4} {:>9.2}% {:>10.4}",
                d.depth,
                d.mode.name(),
                d.computed.lower,
                d.computed.upper,
                d.reference.lower,
                d.reference.upper,
                d.abs_dev_lower,
                d.abs_dev_upper,
                100.0 * d.half_width_rel_dev,
                d.midpoint_abs_dev
            )?;
        }
        for m in &self.missing {
            writeln!(f, "# no reference row for m = {m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::DEFAULT_MAP_CAP;

    fn framework1() -> FifSystem {
        FifSystem::try_from((
            vec![0.0, 1.0, 2.0, 3.0, 4.0],
            vec![3.0, 2.0, 4.0, 3.0, 4.0],
            vec![0.3; 4],
        ))
        .unwrap()
    }

    #[test]
    fn vertices_examples() {
        let r = Rhombus::new(Point::new(0.0, 0.0), 1.0, 1.0);
        assert_eq!(
            r.vertices(),
            [
                Point::new(1.0, 0.0),
                Point::new(-1.0, 0.0),
                Point::new(0.0, 1.0),
                Point::new(0.0, -1.0)
            ]
        );
        let r = Rhombus::new(Point::new(2.0, 3.0), 2.0, 0.5);
        assert_eq!(
            rhombus_vertices(&r),
            [
                Point::new(4.0, 3.0),
                Point::new(0.0, 3.0),
                Point::new(2.0, 7.0),
                Point::new(2.0, -1.0)
            ]
        );
        for v in r.vertices() {
            assert_eq!(rho_distance(v, r.center, r.theta), r.radius);
        }
    }

    #[test]
    fn containment_examples() {
        let r = Rhombus::new(Point::new(0.0, 0.0), 1.0, 1.0);
        assert!(rhombus_contains(&r, r.center, 0.0));
        assert!(rhombus_contains(&r, r.vertices()[2], 0.0));
        assert!(!rhombus_contains(&r, Point::new(0.6, 0.6), 0.0));
        assert!(rhombus_contains(&r, Point::new(0.6, 0.6), 0.2));
    }

    #[test]
    fn boundary_walk_stays_on_boundary() {
        let r = Rhombus::new(Point::new(1.0, -2.0), 0.7, 0.3);
        for i in 0..64 {
            let p = r.boundary_point(i as f64 * 4.0 / 64.0);
            assert!((rho_distance(p, r.center, r.theta) - r.radius).abs() < 1e-12);
        }
        assert_eq!(r.boundary_point(0.0), r.vertices()[0]);
        assert_eq!(r.boundary_point(1.0), r.vertices()[2]);
    }

    #[test]
    fn pairwise_distance_examples() {
        let p = Point::new(1.0, 2.0);
        assert_eq!(max_pairwise_distance(&[p, p], 0.4).unwrap(), 0.0);
        assert!(max_pairwise_distance(&[p], 0.4).is_err());
        assert!(max_pairwise_euclidean(&[]).is_err());

        let theta = 15.0 / 17.0;
        let pts = [
            Point::new(0.0, 3.0),
            Point::new(4.0 / 3.0, 2.380_952_4),
            Point::new(8.0 / 3.0, 2.777_777_8),
            Point::new(4.0, 4.0),
        ];
        let m = max_pairwise_distance(&pts, theta).unwrap();
        assert!((m - 83.0 / 17.0).abs() < 1e-12);
    }

    #[test]
    fn euclidean_diameter_with_collinear_points() {
        let pts: Vec<Point> = (0..10).map(|i| Point::new(i as f64, 2.0 * i as f64)).collect();
        let m = max_pairwise_euclidean(&pts).unwrap();
        assert!((m - 9.0 * 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn framework1_depth1_radii() {
        let cov = build_covering(&framework1(), 1, Mode::Theorem, DEFAULT_MAP_CAP).unwrap();
        assert_eq!(cov.len(), 4);
        let expect = [0.404_411_8, 0.536_764_7, 0.536_764_7, 0.625];
        for (s, e) in cov.s_sorted().iter().zip(expect) {
            assert!((s - e).abs() < 1e-7);
        }
        assert!((cov.big_m() - 83.0 / 17.0).abs() < 1e-12);
        // word (2) attains the maximum
        let r2 = cov.entries()[1].rhombus.radius;
        let denom = 1.0 - 0.625 * (0.25 + 15.0 / 17.0 * 0.325);
        let expected = 83.0 / 17.0 * 0.625 * (1.0 + 0.25 + 15.0 / 17.0 * 0.325) / denom;
        assert!((r2 - expected).abs() < 1e-12);
        assert!((r2 - 7.0568).abs() < 1e-4);
        assert!((denom - 0.664_522_1).abs() < 1e-7);
    }

    #[test]
    fn tie_symmetric_two_map_radii() {
        // equal spacing and equal d gives equal constants
        let sys = FifSystem::try_from((vec![0.0, 1.0, 2.0], vec![1.0, 1.0, 1.0], vec![0.6, 0.6])).unwrap();
        let cov = build_covering(&sys, 1, Mode::Theorem, DEFAULT_MAP_CAP).unwrap();
        let s = 0.6;
        let m = cov.big_m();
        assert!(m > 0.0);
        for e in cov.entries() {
            assert!((e.rhombus.radius - m * s / (1.0 - s)).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_data_bounds_are_symmetric() {
        let sys = FifSystem::try_from((vec![0.0, 1.0, 3.0, 4.0], vec![2.0; 4], vec![0.2, 0.5, 0.1])).unwrap();
        let cov = build_covering(&sys, 1, Mode::Theorem, DEFAULT_MAP_CAP).unwrap();
        let r_max = cov.rhombi().map(|r| r.radius).fold(0.0, f64::max);
        let b = range_bounds(&cov);
        assert!((b.lower - (2.0 - r_max)).abs() < 1e-12);
        assert!((b.upper - (2.0 + r_max)).abs() < 1e-12);
        assert!(cov.rhombi().all(|r| (r.center.y - 2.0).abs() < 1e-12));
    }

    #[test]
    fn theorem_and_appendix_agree_on_symmetric_input() {
        let sys = FifSystem::try_from((vec![0.0, 1.0, 2.0, 3.0], vec![4.0; 4], vec![0.5; 3])).unwrap();
        let th = build_covering(&sys, 2, Mode::Theorem, DEFAULT_MAP_CAP).unwrap();
        let ap = build_covering(&sys, 2, Mode::Appendix, DEFAULT_MAP_CAP).unwrap();
        assert!((th.big_m() - ap.big_m()).abs() < 1e-12);
        let max_th = th.rhombi().map(|r| r.radius).fold(0.0, f64::max);
        let max_ap = ap.rhombi().map(|r| r.radius).fold(0.0, f64::max);
        assert!((max_th - max_ap).abs() < 1e-12);
        assert_eq!(ap.deviations().len(), 3);
        assert!(th.deviations().is_empty());
    }

    #[test]
    fn point_distance_examples() {
        let sys = framework1();
        let cov = build_covering(&sys, 1, Mode::Theorem, DEFAULT_MAP_CAP).unwrap();
        assert_eq!(point_to_covering_distance(Point::new(1.0, 3.0), &cov), 0.0);
        let single = Covering::from_parts(
            1,
            1,
            Mode::Theorem,
            1.0,
            0.0,
            vec![CoverEntry {
                rhombus: Rhombus::new(Point::new(0.0, 0.0), 1.0, 1.0),
                lipschitz: 0.5,
            }],
            (0.0, 1.0),
        );
        assert_eq!(point_to_covering_distance(Point::new(3.0, 0.0), &single), 2.0);
        assert_eq!(single.index().distance(Point::new(3.0, 0.0)), 2.0);
    }

    #[test]
    fn index_agrees_with_scan() {
        let sys = framework1();
        let cov = build_covering(&sys, 3, Mode::Theorem, DEFAULT_MAP_CAP).unwrap();
        let idx = cov.index();
        for i in 0..2000 {
            let p = Point::new(-1.0 + 6.0 * (i % 50) as f64 / 49.0, -1.0 + 7.0 * (i / 50) as f64 / 39.0);
            assert_eq!(idx.distance(p), point_to_covering_distance(p, &cov));
            assert_eq!(idx.contains(p, 0.0), point_to_covering_distance(p, &cov) == 0.0);
        }
    }

    #[test]
    fn depth_cap_error() {
        let err = build_covering(&framework1(), 6, Mode::Theorem, 1000).unwrap_err();
        assert!(matches!(err, Error::DepthCapExceeded { .. }));
    }

    #[test]
    fn comparing_identical_bounds_gives_zero() {
        let table = ReferenceTable {
            format_version: 1,
            name: "t".into(),
            source: "test".into(),
            rows: vec![ReferenceRow { depth: 1, lower: -1.0, upper: 3.0 }],
        };
        let rb = RangeBounds { lower: -1.0, upper: 3.0 };
        let report = compare_with_reference(&[(1, Mode::Theorem, rb), (2, Mode::Theorem, rb)], &table);
        let d = report.get(1, Mode::Theorem).unwrap();
        assert_eq!(
            (d.abs_dev_lower, d.abs_dev_upper, d.half_width_rel_dev, d.midpoint_abs_dev),
            (0.0, 0.0, 0.0, 0.0)
        );
        assert_eq!(report.missing, vec![2]);
        assert!(report.to_string().contains("no reference row for m = 2"));
    }
}
