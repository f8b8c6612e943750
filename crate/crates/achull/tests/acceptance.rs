//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (run with `--nocapture` to see them on success).
//!
//! 1. Golden directed-search example (4×4 matrix), exact, < 1 ms.
//! 2. Directed search ≡ full evaluation on ≥ 500 random matrices, plus
//!    tie-injected matrices under deterministic tie mode, < 5 s.
//! 3. Active-set projection ≡ projected-gradient reference within 1e-6 on
//!    ≥ 300 instances, with simplex + certificate invariants, < 30 s.
//! 4. Planar reduction: greedy build with a full budget recovers the exact
//!    2-D hull on ≥ 100 Gaussian clouds, < 2 min.
//! 5. Monotone per-iteration error and full coverage on every build of
//!    criteria 4 and 6.
//! 6. High-dimension feasibility: N=200, V=10 completes at n=1000 within
//!    200× the n=10 wall time; iteration counts stay within the budget.
//! 7. CLI determinism: identical reports modulo the timing section.

use achull::bench::gaussian_cloud;
use achull::oracle::{exact_hull_2d, full_min_max, reference_projection};
use achull::search::{directed_min_max, DenseMatrix, TieBreak};
use achull::{build, distance_to_hull, BuildConfig, PointSet, SolverConfig, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;
use std::time::Instant;

fn criterion(number: u32, name: &str, check: impl FnOnce() -> Result<(), String>) {
    match check() {
        Ok(()) => println!("acceptance criterion {number} ({name}): PASS"),
        Err(msg) => {
            println!("acceptance criterion {number} ({name}): FAIL — {msg}");
            panic!("acceptance criterion {number} ({name}) failed: {msg}");
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if $cond {
        } else {
            return Err(format!($($arg)+));
        }
    };
}

#[test]
fn criterion_1_golden_directed_search() {
    criterion(1, "golden 4x4 directed search", || {
        let matrix = DenseMatrix(vec![
            vec![5.0, 1.0, 2.0, 5.0],
            vec![1.0, 5.0, 1.0, 2.0],
            vec![0.0, 2.0, 2.0, 5.0],
            vec![6.0, 7.0, 4.0, 0.0],
        ]);
        let started = Instant::now();
        let out = directed_min_max(&matrix, TieBreak::LowestIndex).map_err(|e| e.to_string())?;
        let elapsed = started.elapsed();
        ensure!(out.value == 4.0, "expected min-max 4, got {}", out.value);
        ensure!(
            out.col == 2,
            "expected column 3 (1-based), got {}",
            out.col + 1
        );
        ensure!(
            elapsed.as_secs_f64() < 1e-3,
            "took {:?}, budget 1 ms",
            elapsed
        );
        Ok(())
    });
}

#[test]
fn criterion_2_directed_search_equivalence() {
    criterion(2, "directed search ≡ full evaluation", || {
        let started = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(20_240_001);

        // Distinct entries: a shuffled integer sequence, randomly scaled.
        for trial in 0..500 {
            let rows = rng.random_range(1..=20);
            let cols = rng.random_range(1..=20);
            let scale = rng.random_range(0.1..10.0);
            let mut entries: Vec<f64> = (0..rows * cols).map(|k| k as f64 * scale).collect();
            entries.shuffle(&mut rng);
            let matrix: Vec<Vec<f64>> = entries.chunks(cols).map(|c| c.to_vec()).collect();
            let (col, value) = full_min_max(&matrix);
            let out = directed_min_max(&DenseMatrix(matrix), TieBreak::LowestIndex)
                .map_err(|e| e.to_string())?;
            ensure!(
                out.value == value,
                "trial {trial}: value {} vs {value}",
                out.value
            );
            ensure!(out.col == col, "trial {trial}: column {} vs {col}", out.col);
        }

        // Tie-heavy matrices: small integer entries collide constantly.
        for trial in 0..250 {
            let rows = rng.random_range(1..=20);
            let cols = rng.random_range(1..=20);
            let matrix: Vec<Vec<f64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.random_range(0..5) as f64).collect())
                .collect();
            let (col, value) = full_min_max(&matrix);
            let out = directed_min_max(&DenseMatrix(matrix), TieBreak::LowestIndex)
                .map_err(|e| e.to_string())?;
            ensure!(
                out.value == value,
                "tied trial {trial}: value {} vs {value}",
                out.value
            );
            ensure!(
                out.col == col,
                "tied trial {trial}: column {} vs {col} (deterministic mode)",
                out.col
            );
        }

        let elapsed = started.elapsed();
        ensure!(
            elapsed.as_secs_f64() < 5.0,
            "took {:?}, budget 5 s",
            elapsed
        );
        Ok(())
    });
}

#[test]
fn criterion_3_projection_correctness() {
    criterion(3, "projection ≡ reference solver", || {
        let started = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(20_240_002);
        let config = SolverConfig::default();
        for trial in 0..300 {
            let m = rng.random_range(1..=8);
            let n = rng.random_range(1..=5);
            let pts: Vec<Vec<f64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.random_range(-2.0..2.0)).collect())
                .collect();
            let z: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
            let cands: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();

            let fast = distance_to_hull(&z, &cands, &config).map_err(|e| e.to_string())?;
            let slow = reference_projection(&z, &cands, 1e-13).map_err(|e| e.to_string())?;
            ensure!(
                (fast.distance - slow.distance).abs() <= 1e-6,
                "trial {trial}: distance {} vs reference {}",
                fast.distance,
                slow.distance
            );

            let sum: f64 = fast.weights.iter().sum();
            ensure!(
                (sum - 1.0).abs() <= 1e-12,
                "trial {trial}: weights sum {sum}"
            );
            ensure!(
                fast.weights.iter().all(|&w| w >= 0.0),
                "trial {trial}: negative weight"
            );
            let tol = config.resolved_tol(&z, &cands);
            let gap = fast.certificate_gap(&z, &cands);
            ensure!(gap <= tol, "trial {trial}: certificate gap {gap} > {tol}");
        }
        let elapsed = started.elapsed();
        ensure!(
            elapsed.as_secs_f64() < 30.0,
            "took {:?}, budget 30 s",
            elapsed
        );
        Ok(())
    });
}

/// A finished build kept around for the coverage/monotonicity criterion.
struct BuildCase {
    label: String,
    points: PointSet,
    hull: VertexSet,
    epsilons: Vec<f64>,
    iterations: usize,
    tol_interior: f64,
    wall_seconds: f64,
}

fn build_case(label: String, points: PointSet, config: &BuildConfig) -> BuildCase {
    let started = Instant::now();
    let (hull, trace) = build(&points, config).expect("build succeeds");
    let wall_seconds = started.elapsed().as_secs_f64();
    let tol_interior = (1e-9 * points.bbox_diagonal()).max(f64::MIN_POSITIVE);
    BuildCase {
        label,
        points,
        hull,
        epsilons: trace.steps.iter().map(|s| s.epsilon).collect(),
        iterations: trace.iterations(),
        tol_interior,
        wall_seconds,
    }
}

/// Worst distance of any input point to the hull of the chosen vertices.
fn coverage(case: &BuildCase) -> f64 {
    let solver = SolverConfig::default();
    let rows = case.points.rows_for(&case.hull.indices);
    (0..case.points.count())
        .map(|i| {
            distance_to_hull(case.points.row(i), &rows, &solver)
                .expect("projection succeeds")
                .distance
        })
        .fold(0.0, f64::max)
}

fn planar_cases() -> &'static (Vec<BuildCase>, f64) {
    static CASES: OnceLock<(Vec<BuildCase>, f64)> = OnceLock::new();
    CASES.get_or_init(|| {
        let started = Instant::now();
        let cases = (0..100)
            .map(|i| {
                let points = gaussian_cloud(50, 2, 90_000 + i);
                build_case(format!("planar cloud {i}"), points, &BuildConfig::default())
            })
            .collect();
        (cases, started.elapsed().as_secs_f64())
    })
}

fn high_dimension_cases() -> &'static Vec<BuildCase> {
    static CASES: OnceLock<Vec<BuildCase>> = OnceLock::new();
    CASES.get_or_init(|| {
        let config = BuildConfig {
            max_vertices: 10,
            ..BuildConfig::default()
        };
        // Sequential, so the wall-time ratio compares like with like.
        vec![
            build_case(
                "N=200 n=10".to_string(),
                gaussian_cloud(200, 10, 77_001),
                &config,
            ),
            build_case(
                "N=200 n=1000".to_string(),
                gaussian_cloud(200, 1000, 77_002),
                &config,
            ),
        ]
    })
}

#[test]
fn criterion_4_exact_hull_reduction() {
    criterion(4, "planar exact-hull reduction", || {
        let (cases, elapsed) = planar_cases();
        for case in cases {
            let mut got = case.hull.indices.clone();
            got.sort_unstable();
            let mut expected = exact_hull_2d(&case.points);
            expected.sort_unstable();
            ensure!(
                got == expected,
                "{}: vertices {:?} != exact hull {:?}",
                case.label,
                got,
                expected
            );
            let cov = coverage(case);
            ensure!(
                cov <= case.tol_interior,
                "{}: coverage {} exceeds tol_interior {}",
                case.label,
                cov,
                case.tol_interior
            );
        }
        ensure!(*elapsed < 120.0, "took {elapsed:.1} s, budget 120 s");
        Ok(())
    });
}

#[test]
fn criterion_5_monotonicity_and_coverage() {
    criterion(5, "ε-monotonicity and coverage", || {
        let (planar, _) = planar_cases();
        let all = planar.iter().chain(high_dimension_cases().iter());
        for case in all {
            for pair in case.epsilons.windows(2) {
                ensure!(
                    pair[1] <= pair[0] + 1e-9,
                    "{}: epsilon rose from {} to {}",
                    case.label,
                    pair[0],
                    pair[1]
                );
            }
            let cov = coverage(case);
            let bound = case.hull.epsilon_achieved + case.tol_interior;
            ensure!(
                cov <= bound,
                "{}: coverage {} exceeds epsilon+tol {}",
                case.label,
                cov,
                bound
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_6_high_dimension_feasibility() {
    criterion(6, "high-dimension feasibility", || {
        let cases = high_dimension_cases();
        let low = &cases[0];
        let high = &cases[1];
        for case in cases {
            ensure!(
                case.iterations <= 10,
                "{}: {} iterations exceed the budget of 10",
                case.label,
                case.iterations
            );
        }
        let ratio = high.wall_seconds / low.wall_seconds;
        ensure!(
            ratio <= 200.0,
            "n=1000 took {:.2} s vs {:.2} s at n=10: ratio {ratio:.1} exceeds 200",
            high.wall_seconds,
            low.wall_seconds
        );
        Ok(())
    });
}

#[test]
fn criterion_7_cli_determinism() {
    criterion(7, "CLI determinism", || {
        use std::process::Command;
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let csv_path = dir.path().join("cloud.csv");
        let cloud = gaussian_cloud(30, 3, 55_055);
        let mut text = String::new();
        for row in (0..cloud.count()).map(|i| cloud.row(i)) {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            text.push_str(&cells.join(","));
            text.push('\n');
        }
        std::fs::write(&csv_path, text).map_err(|e| e.to_string())?;

        let mut reports = Vec::new();
        for _ in 0..2 {
            let output = Command::new(env!("CARGO_BIN_EXE_achull"))
                .args(["--input", csv_path.to_str().unwrap(), "--epsilon", "0"])
                .output()
                .map_err(|e| e.to_string())?;
            ensure!(
                output.status.success(),
                "CLI failed: {}",
                String::from_utf8_lossy(&output.stderr)
            );
            let mut value: serde_json::Value =
                serde_json::from_slice(&output.stdout).map_err(|e| e.to_string())?;
            let stripped = value
                .as_object_mut()
                .ok_or("report is not a JSON object")?
                .remove("timing");
            ensure!(stripped.is_some(), "report has no timing section");
            reports.push(value);
        }
        ensure!(
            reports[0] == reports[1],
            "reports differ outside the timing section"
        );
        Ok(())
    });
}
