//! Scaling benchmark: hull builds over a grid of point counts and
//! dimensions on synthetic Gaussian clouds, reported as a CSV table.
//!
//! The interesting outputs are the projection-solve count and the iteration
//! count, which track the algorithmic cost independently of the machine; the
//! wall-time column is kept last so consumers comparing runs can drop it.

use crate::builder::{build, BuildConfig};
use crate::error::{Error, Result};
use crate::point_set::PointSet;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// Sweep definition, usually loaded from JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchSpec {
    /// Point counts to sweep.
    pub n_points: Vec<usize>,
    /// Dimensions to sweep.
    pub dimensions: Vec<usize>,
    /// Vertex budget for every build.
    pub max_vertices: usize,
    /// Base seed; each (N, n, rep) cell derives its own stream from it.
    pub seed: u64,
    /// Builds per cell.
    pub repetitions: usize,
}

impl BenchSpec {
    fn validate(&self) -> Result<()> {
        if self.n_points.is_empty() || self.dimensions.is_empty() {
            return Err(Error::contract(
                "benchmark spec needs n_points and dimensions",
            ));
        }
        if self.n_points.contains(&0) || self.dimensions.contains(&0) {
            return Err(Error::contract("benchmark sizes must be positive"));
        }
        if self.max_vertices == 0 || self.repetitions == 0 {
            return Err(Error::contract(
                "max_vertices and repetitions must be positive",
            ));
        }
        Ok(())
    }
}

/// One benchmark cell result. `status` is "ok" or the build error message;
/// numeric fields are zero for failed cells.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub n_points: usize,
    pub dimension: usize,
    pub repetitions: usize,
    pub status: String,
    /// Mean greedy iterations over the repetitions.
    pub iterations: f64,
    /// Mean final vertex count.
    pub vertices: f64,
    /// Mean achieved error.
    pub epsilon: f64,
    /// Mean projection-solve count.
    pub distance_calls: f64,
    /// Mean directed-search evaluations.
    pub evals_used: f64,
    /// Mean build wall time.
    pub wall_seconds: f64,
}

/// Run the sweep: one output row per (N, n) cell, averaging over the
/// repetitions (each repetition draws its own cloud). Build failures are
/// recorded in their cell's status without aborting the remaining cells.
pub fn run_benchmark(spec: &BenchSpec) -> Result<Vec<BenchRow>> {
    spec.validate()?;
    let mut rows = Vec::new();
    for &n in &spec.n_points {
        for &dim in &spec.dimensions {
            let mut row = BenchRow {
                n_points: n,
                dimension: dim,
                repetitions: spec.repetitions,
                status: "ok".to_string(),
                iterations: 0.0,
                vertices: 0.0,
                epsilon: 0.0,
                distance_calls: 0.0,
                evals_used: 0.0,
                wall_seconds: 0.0,
            };
            for rep in 0..spec.repetitions {
                let cloud = gaussian_cloud(n, dim, cell_seed(spec.seed, n, dim, rep));
                let config = BuildConfig {
                    max_vertices: spec.max_vertices,
                    ..BuildConfig::default()
                };
                match build(&cloud, &config) {
                    Ok((hull, trace)) => {
                        row.iterations += trace.iterations() as f64;
                        row.vertices += hull.len() as f64;
                        row.epsilon += hull.epsilon_achieved;
                        row.distance_calls += trace.stats.distance_calls as f64;
                        row.evals_used +=
                            trace.steps.iter().map(|s| s.evals_used).sum::<usize>() as f64;
                        row.wall_seconds += trace.stats.total_seconds;
                    }
                    Err(e) => {
                        if row.status == "ok" {
                            row.status = format!("error: {e}");
                        }
                    }
                }
            }
            let reps = spec.repetitions as f64;
            row.iterations /= reps;
            row.vertices /= reps;
            row.epsilon /= reps;
            row.distance_calls /= reps;
            row.evals_used /= reps;
            row.wall_seconds /= reps;
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Serialize rows as CSV. Deterministic except for the final wall-time
/// column.
pub fn table_to_csv(rows: &[BenchRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "n_points",
            "dimension",
            "repetitions",
            "status",
            "iterations",
            "vertices",
            "epsilon",
            "distance_calls",
            "evals_used",
            "wall_seconds",
        ])
        .expect("csv header");
    for r in rows {
        writer
            .write_record([
                r.n_points.to_string(),
                r.dimension.to_string(),
                r.repetitions.to_string(),
                r.status.clone(),
                r.iterations.to_string(),
                r.vertices.to_string(),
                r.epsilon.to_string(),
                r.distance_calls.to_string(),
                r.evals_used.to_string(),
                r.wall_seconds.to_string(),
            ])
            .expect("csv row");
    }
    String::from_utf8(writer.into_inner().expect("csv flush")).expect("utf-8")
}

/// Standard-normal cloud of `n` points in `dim` dimensions from a dedicated
/// ChaCha stream. Collisions are removed by ingestion (vanishingly rare).
pub fn gaussian_cloud(n: usize, dim: usize, seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect())
        .collect();
    PointSet::from_rows(&rows)
        .expect("gaussian cloud is valid")
        .points
}

/// Stable per-cell seed (splitmix-style mixing).
fn cell_seed(base: u64, n: usize, dim: usize, rep: usize) -> u64 {
    let mut x = base
        .wrapping_add((n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add((dim as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9))
        .wrapping_add((rep as u64).wrapping_mul(0x94D0_49BB_1331_11EB));
    x ^= x >> 30;
    x = x.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^= x >> 31;
    x
}
