//! Project a query point onto the convex hull of a few candidates and
//! inspect the result: distance, simplex weights, projected point, and the
//! optimality certificate.
//!
//! ```bash
//! cargo run --example project_point
//! ```

use achull::{distance_to_hull, SolverConfig};

fn main() -> achull::Result<()> {
    let candidates: [&[f64]; 4] = [
        &[0.0, 0.0, 0.0],
        &[2.0, 0.0, 0.0],
        &[0.0, 2.0, 0.0],
        &[0.0, 0.0, 2.0],
    ];
    let queries: [&[f64]; 3] = [
        &[0.5, 0.5, 0.5],  // inside the tetrahedron
        &[3.0, 3.0, 3.0],  // far outside, projects onto the opposite face
        &[-1.0, 0.5, 0.5], // outside one face
    ];

    let config = SolverConfig::default();
    for z in queries {
        let proj = distance_to_hull(z, &candidates, &config)?;
        println!("query {z:?}");
        println!("  distance         {:.6}", proj.distance);
        println!("  projected point  {:?}", rounded(&proj.point));
        println!("  weights          {:?}", rounded(&proj.weights));
        println!(
            "  certificate gap  {:.3e} (non-positive up to tolerance)",
            proj.certificate_gap(z, &candidates)
        );
    }
    Ok(())
}

fn rounded(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| (x * 1e6).round() / 1e6).collect()
}
