//! Find `min_j max_i` of a matrix without evaluating all of it.
//!
//! Runs the directed search on a 4×4 matrix and on a larger random one,
//! reporting how many entries each search actually touched.
//!
//! ```bash
//! cargo run --example directed_search
//! ```

use achull::search::{directed_min_max, DenseMatrix, TieBreak};
use rand::{Rng, SeedableRng};

fn main() -> achull::Result<()> {
    // Column maxima are 6, 7, 4, 5, so the answer is 4 in column 3.
    let small = DenseMatrix(vec![
        vec![5.0, 1.0, 2.0, 5.0],
        vec![1.0, 5.0, 1.0, 2.0],
        vec![0.0, 2.0, 2.0, 5.0],
        vec![6.0, 7.0, 4.0, 0.0],
    ]);
    let out = directed_min_max(&small, TieBreak::LowestIndex)?;
    println!(
        "4x4 matrix: min-max {} at column {} after {} of 16 evaluations",
        out.value,
        out.col + 1,
        out.evals_used
    );

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let n = 60;
    let random = DenseMatrix(
        (0..n)
            .map(|_| (0..n).map(|_| rng.random_range(0.0..100.0)).collect())
            .collect(),
    );
    let out = directed_min_max(&random, TieBreak::LowestIndex)?;
    println!(
        "{n}x{n} random matrix: min-max {:.3} at column {} after {} of {} evaluations ({:.1}%)",
        out.value,
        out.col + 1,
        out.evals_used,
        n * n,
        100.0 * out.evals_used as f64 / (n * n) as f64
    );
    Ok(())
}
