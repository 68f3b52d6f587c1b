//! Guaranteed rhombus coverings of the graphs of affine fractal interpolation
//! functions, and the range bounds they imply.
//!
//! Given data points and vertical scaling factors, [`model::build_system`]
//! constructs the iterated function system whose attractor is the graph of
//! the interpolant. [`covering::build_covering`] covers that graph with
//! closed balls of the weighted metric `|du| + theta |dv|` (rhombi) centered
//! at the fixed points of all depth-`m` compositions, and
//! [`covering::range_bounds`] reads off an interval containing the range.
//! [`oracle`] samples the attractor independently to check both.

pub mod analysis;
pub mod cli;
pub mod covering;
pub mod error;
pub mod io;
pub mod model;
pub mod oracle;
pub mod svg;

pub use analysis::{
    compose_all, compose_word, enumerate_words, fixed_point, lipschitz_constant, rho_distance,
    FixedPoint, Word, DEFAULT_MAP_CAP,
};
pub use covering::{
    build_covering, compare_with_reference, max_pairwise_distance, point_to_covering_distance,
    range_bounds, rhombus_contains, rhombus_vertices, Covering, Mode, RangeBounds, Rhombus,
};
pub use error::{Error, Result};
pub use model::{apply_map, build_system, AffineMap, FifSystem, InterpolationData, Point};
pub use oracle::{chaos_game, deterministic_iterate, hausdorff_estimate, verify_containment, AttractorSample};
