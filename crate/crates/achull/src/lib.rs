//! Approximate convex hulls in arbitrary dimension.
//!
//! Computing an exact convex hull becomes hopeless as the dimension grows:
//! both the cost of finding it and the number of vertices needed to describe
//! it explode. This crate instead selects a small subset of the input whose
//! hull covers every input point to within a distance `ε`, using a greedy
//! criterion: each added vertex is the one that minimizes the worst-case
//! distance of the remaining points to the enlarged hull. All arithmetic is
//! linear in the dimension, so point clouds with thousands of coordinates
//! per point are fine.
//!
//! The pieces compose bottom-up and are usable on their own:
//!
//! - [`projection::distance_to_hull`] — distance from a point to the hull of
//!   a candidate set, via simplex-constrained least squares with a
//!   certificate of optimality.
//! - [`search::directed_min_max`] — `min_j max_i` of an implicit matrix,
//!   evaluating only the entries it must.
//! - [`builder::build`] — the full greedy loop with interior-point
//!   elimination and vertex pruning.
//! - [`oracle`] — slow brute-force references used by the test suites.
//! - [`io`] / [`bench`] / [`cli`] — CSV ingestion, JSON run reports, the
//!   scaling benchmark, and the `achull` command-line entry point.
//!
//! Start with the runnable examples: `cargo run --example build_hull`.

pub mod bench;
pub mod builder;
pub mod cli;
mod error;
pub mod io;
pub mod oracle;
pub mod point_set;
pub mod projection;
pub mod search;

pub use builder::{build, BuildConfig, BuildTrace, TieMode, VertexSet};
pub use error::{Error, Result};
pub use point_set::{Ingested, PointSet};
pub use projection::{distance_to_hull, Projection, SolverConfig};
pub use search::{directed_min_max, MatrixOracle, SearchOutcome, TieBreak};
