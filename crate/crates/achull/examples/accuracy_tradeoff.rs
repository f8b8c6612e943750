//! The accuracy/parsimony trade-off: sweep the vertex budget and watch the
//! achieved worst-case error fall.
//!
//! ```bash
//! cargo run --example accuracy_tradeoff
//! ```

use achull::bench::gaussian_cloud;
use achull::{build, BuildConfig};

fn main() -> achull::Result<()> {
    let points = gaussian_cloud(150, 6, 21);
    println!("{:>8} {:>10} {:>12}", "budget", "vertices", "epsilon");
    for budget in [1, 2, 4, 8, 16, 32, 64] {
        let config = BuildConfig {
            max_vertices: budget,
            ..BuildConfig::default()
        };
        let (hull, _) = build(&points, &config)?;
        println!(
            "{:>8} {:>10} {:>12.6}",
            budget,
            hull.len(),
            hull.epsilon_achieved
        );
    }
    Ok(())
}
