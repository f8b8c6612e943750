//! Build an approximate hull of a planar point cloud and compare it with
//! the exact hull computed by gift wrapping.
//!
//! ```bash
//! cargo run --example build_hull
//! ```

use achull::bench::gaussian_cloud;
use achull::oracle::exact_hull_2d;
use achull::{build, BuildConfig};

fn main() -> achull::Result<()> {
    let points = gaussian_cloud(200, 2, 7);
    let (hull, trace) = build(&points, &BuildConfig::default())?;

    println!(
        "built hull of {} vertices in {} iterations",
        hull.len(),
        trace.iterations()
    );
    println!(
        "{:>4} {:>7} {:>12} {:>9} {:>7}",
        "iter", "vertex", "epsilon", "interior", "evals"
    );
    for step in &trace.steps {
        println!(
            "{:>4} {:>7} {:>12.6} {:>9} {:>7}",
            step.iteration, step.chosen, step.epsilon, step.interior_found, step.evals_used
        );
    }
    println!(
        "{} projection solves, {:.1} ms total",
        trace.stats.distance_calls,
        trace.stats.total_seconds * 1e3
    );

    let mut got = hull.indices.clone();
    got.sort_unstable();
    let mut exact = exact_hull_2d(&points);
    exact.sort_unstable();
    println!(
        "matches the exact planar hull: {}",
        if got == exact { "yes" } else { "no" }
    );
    Ok(())
}
