//! A small scaling sweep over point count and dimension, printed as the
//! same CSV table `achull bench` produces.
//!
//! ```bash
//! cargo run --example benchmark_sweep
//! ```

use achull::bench::{run_benchmark, table_to_csv, BenchSpec};

fn main() -> achull::Result<()> {
    let spec = BenchSpec {
        n_points: vec![50, 100, 200],
        dimensions: vec![5, 50],
        max_vertices: 8,
        seed: 42,
        repetitions: 2,
    };
    let rows = run_benchmark(&spec)?;
    print!("{}", table_to_csv(&rows));
    Ok(())
}
