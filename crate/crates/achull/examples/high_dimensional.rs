//! Hull approximation where exact methods cannot go: 500-dimensional data.
//!
//! Everything in the pipeline is linear in the dimension, so the build cost
//! is driven by the point count and vertex budget, not by `n`.
//!
//! ```bash
//! cargo run --example high_dimensional
//! ```

use achull::bench::gaussian_cloud;
use achull::{build, distance_to_hull, BuildConfig, SolverConfig};

fn main() -> achull::Result<()> {
    let points = gaussian_cloud(300, 500, 3);
    let config = BuildConfig {
        max_vertices: 12,
        ..BuildConfig::default()
    };
    let (hull, trace) = build(&points, &config)?;

    println!(
        "{} points in {} dimensions -> {} hull vertices in {} iterations",
        points.count(),
        points.dim(),
        hull.len(),
        trace.iterations()
    );
    println!("worst-case error epsilon = {:.4}", hull.epsilon_achieved);
    println!(
        "{} projection solves, solver {:.2} s, total {:.2} s",
        trace.stats.distance_calls, trace.stats.solver_seconds, trace.stats.total_seconds
    );

    // Spot-check the guarantee on a few points.
    let solver = SolverConfig::default();
    let rows = points.rows_for(&hull.indices);
    let worst = (0..points.count())
        .step_by(17)
        .map(|i| distance_to_hull(points.row(i), &rows, &solver).map(|p| p.distance))
        .collect::<achull::Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0f64, f64::max);
    println!("sampled coverage: max distance {worst:.4} <= epsilon");
    Ok(())
}
