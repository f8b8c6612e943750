//! The file-based pipeline: load points from CSV, build, and emit the JSON
//! run report — the same path the `achull` binary takes.
//!
//! ```bash
//! cargo run --example csv_report
//! ```

use achull::io::{load_points, report_to_json, run_report, LoadOptions};
use achull::{build, BuildConfig};
use std::io::Write;

fn main() -> achull::Result<()> {
    // A ring of points plus a few interior ones, with one duplicate row.
    let mut csv = String::from("x,y\n");
    for k in 0..12 {
        let a = k as f64 * std::f64::consts::TAU / 12.0;
        csv.push_str(&format!("{},{}\n", a.cos(), a.sin()));
    }
    csv.push_str("0.1,0.2\n-0.3,0.1\n0.1,0.2\n");

    let mut file = tempfile::NamedTempFile::new()?;
    file.write_all(csv.as_bytes())?;

    let options = LoadOptions {
        has_header: true,
        ..LoadOptions::default()
    };
    let loaded = load_points(file.path(), &options)?;
    println!(
        "loaded {} rows -> {} unique points ({} duplicates)",
        loaded.rows_read,
        loaded.points.count(),
        loaded.duplicates_removed
    );

    let config = BuildConfig {
        max_vertices: 6,
        ..BuildConfig::default()
    };
    let (hull, trace) = build(&loaded.points, &config)?;
    let report = run_report(file.path(), &loaded, &config, 1, &hull, &trace);
    print!("{}", report_to_json(&report)?);
    Ok(())
}
