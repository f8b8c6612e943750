//! Slow, simple reference implementations used to validate the fast paths.
//!
//! Everything here is deliberately written with a different algorithm than
//! the production code it checks, so a bug cannot confirm itself:
//!
//! - [`full_min_max`] materializes the whole matrix instead of searching.
//! - [`reference_projection`] runs projected gradient descent on the simplex
//!   (with a coarse grid start) instead of the active-set method.
//! - [`exact_hull_2d`] gift-wraps in the plane.
//!
//! Clarity beats speed throughout; these run in tests and acceptance checks.

use crate::error::{Error, Result};
use crate::point_set::PointSet;
use crate::projection::Projection;

/// Argmin over columns of the column maxima, evaluating every entry.
/// Ties go to the lowest column index. Returns `(column, value)`.
pub fn full_min_max(matrix: &[Vec<f64>]) -> (usize, f64) {
    assert!(
        !matrix.is_empty() && !matrix[0].is_empty(),
        "matrix must be nonempty"
    );
    let cols = matrix[0].len();
    let mut best_col = 0;
    let mut best_val = f64::INFINITY;
    for j in 0..cols {
        let col_max = matrix
            .iter()
            .map(|row| row[j])
            .fold(f64::NEG_INFINITY, f64::max);
        if col_max < best_val {
            best_val = col_max;
            best_col = j;
        }
    }
    (best_col, best_val)
}

/// Is point `i` an extreme point of the set, i.e. not expressible as a convex
/// combination of the others? Decided by the reference solver: extreme iff
/// the distance from `x_i` to the hull of the rest exceeds `tol`.
///
/// The projected-gradient iteration maintains rigorous two-sided bounds on
/// the true squared distance `f*` — `f − gap ≤ f* ≤ f` — so the predicate is
/// answered as soon as either bound clears `tol²`, without driving the solve
/// to full precision.
pub fn is_extreme(i: usize, points: &PointSet, tol: f64) -> Result<bool> {
    assert!(points.count() >= 2, "is_extreme needs at least two points");
    let others: Vec<&[f64]> = (0..points.count())
        .filter(|&k| k != i)
        .map(|k| points.row(k))
        .collect();
    let threshold = tol * tol;
    let mut verdict = None;
    let run = pgd_simplex(points.row(i), &others, |f, gap| {
        if f - gap > threshold {
            verdict = Some(true);
        } else if f <= threshold {
            verdict = Some(false);
        }
        verdict.is_some()
    });
    match verdict {
        Some(v) => Ok(v),
        None => Err(Error::Convergence {
            iterations: run.iterations,
            gap: run.gap,
            tolerance: threshold,
            best: Box::new(assemble(points.row(i), &others, &run.alpha)),
        }),
    }
}

/// Projection of `z` onto the hull of `candidates` via a dense simplex grid
/// refined by projected gradient descent, run until the optimality
/// certificate `max_j (z − p)·(xⱼ − p) ≤ tol` holds.
///
/// Same contract as `distance_to_hull`, different algorithm.
pub fn reference_projection(z: &[f64], candidates: &[&[f64]], tol: f64) -> Result<Projection> {
    let run = pgd_simplex(z, candidates, |_, gap| gap <= tol);
    let best = assemble(z, candidates, &run.alpha);
    if run.converged {
        Ok(best)
    } else {
        Err(Error::Convergence {
            iterations: run.iterations,
            gap: run.gap,
            tolerance: tol,
            best: Box::new(best),
        })
    }
}

struct PgdRun {
    alpha: Vec<f64>,
    gap: f64,
    iterations: usize,
    converged: bool,
}

/// Projected gradient descent on the simplex for `f(α) = ‖z − Σ αⱼ xⱼ‖²`,
/// with Nesterov momentum and function-value restarts. `stop(f, gap)` is
/// consulted every iteration with the current objective value and
/// certificate gap; iteration ends when it returns true.
///
/// Validation is the caller's problem; this is test-support code.
fn pgd_simplex(z: &[f64], candidates: &[&[f64]], mut stop: impl FnMut(f64, f64) -> bool) -> PgdRun {
    assert!(!candidates.is_empty(), "candidate set must be nonempty");
    assert!(
        candidates.iter().all(|x| x.len() == z.len()),
        "dimension mismatch"
    );
    let m = candidates.len();

    // Gram matrix of the translated candidates y_j = x_j − z. The objective
    // is f(α) = αᵀGα and the certificate gap is αᵀGα − min_j (Gα)_j.
    let y: Vec<Vec<f64>> = candidates
        .iter()
        .map(|x| x.iter().zip(z).map(|(a, b)| a - b).collect())
        .collect();
    let gram: Vec<Vec<f64>> = (0..m)
        .map(|a| (0..m).map(|b| dot(&y[a], &y[b])).collect())
        .collect();

    // Start from the best point of a coarse simplex grid (all weight vectors
    // with entries in multiples of 1/RESOLUTION), falling back to uniform
    // for larger candidate sets.
    const RESOLUTION: usize = 5;
    let mut alpha = if m <= 8 {
        best_grid_point(&gram, m, RESOLUTION)
    } else {
        vec![1.0 / m as f64; m]
    };

    let mut l = 2.0 * power_iteration_max_eig(&gram);
    if l <= 0.0 {
        l = 1.0;
    }
    let step = 1.0 / (1.01 * l);

    let mut momentum = alpha.clone();
    let mut t_accel = 1.0f64;
    let mut f_prev = f64::INFINITY;
    const MAX_ITERS: usize = 2_000_000;
    let mut last_gap = f64::INFINITY;
    for iterations in 0..MAX_ITERS {
        let g_alpha = mat_vec(&gram, &alpha);
        let f_val = dot(&alpha, &g_alpha);
        let gap = f_val - g_alpha.iter().cloned().fold(f64::INFINITY, f64::min);
        last_gap = gap;
        if stop(f_val, gap) {
            return PgdRun {
                alpha,
                gap,
                iterations,
                converged: true,
            };
        }

        if f_val > f_prev {
            // Momentum overshoot: restart acceleration from the current point.
            momentum = alpha.clone();
            t_accel = 1.0;
        }
        f_prev = f_val;

        let g_momentum = mat_vec(&gram, &momentum);
        let mut next: Vec<f64> = momentum
            .iter()
            .zip(&g_momentum)
            .map(|(&v, &g)| v - step * 2.0 * g)
            .collect();
        project_onto_simplex(&mut next);
        let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t_accel * t_accel).sqrt());
        let beta = (t_accel - 1.0) / t_next;
        momentum = next
            .iter()
            .zip(&alpha)
            .map(|(&xn, &xo)| xn + beta * (xn - xo))
            .collect();
        project_onto_simplex(&mut momentum);
        t_accel = t_next;
        alpha = next;
    }
    PgdRun {
        alpha,
        gap: last_gap,
        iterations: MAX_ITERS,
        converged: false,
    }
}

/// Exact extreme points of a planar point set, counter-clockwise, via gift
/// wrapping. Collinear boundary points that are not vertices are excluded.
pub fn exact_hull_2d(points: &PointSet) -> Vec<usize> {
    assert_eq!(points.dim(), 2, "exact_hull_2d is for planar sets");
    let n = points.count();
    if n == 1 {
        return vec![0];
    }
    // Start at the lexicographically smallest point (lowest x, then y).
    let start = (0..n)
        .min_by(|&a, &b| {
            let (pa, pb) = (points.row(a), points.row(b));
            pa[0].total_cmp(&pb[0]).then(pa[1].total_cmp(&pb[1]))
        })
        .unwrap();
    let mut hull = vec![start];
    let mut current = start;
    loop {
        let mut next = if current == 0 { 1 } else { 0 };
        for cand in 0..n {
            if cand == current {
                continue;
            }
            let turn = cross(points.row(current), points.row(next), points.row(cand));
            if turn < 0.0
                || (turn == 0.0 && further(points.row(current), points.row(cand), points.row(next)))
            {
                // cand is to the right of current→next (or collinear but
                // farther): wrapping counter-clockwise keeps all points to
                // the left, so cand replaces next.
                next = cand;
            }
        }
        if next == start {
            break;
        }
        hull.push(next);
        current = next;
        if hull.len() > n {
            unreachable!("gift wrapping failed to close the hull");
        }
    }
    hull
}

fn cross(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn further(o: &[f64], a: &[f64], b: &[f64]) -> bool {
    let da = (a[0] - o[0]).powi(2) + (a[1] - o[1]).powi(2);
    let db = (b[0] - o[0]).powi(2) + (b[1] - o[1]).powi(2);
    da > db
}

/// Euclidean projection of `v` onto the unit simplex (sort-based).
pub fn project_onto_simplex(v: &mut [f64]) {
    let m = v.len();
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut threshold = 0.0;
    for (k, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let t = (cumulative - 1.0) / (k + 1) as f64;
        if u - t > 0.0 {
            threshold = t;
        }
    }
    let _ = m;
    for x in v.iter_mut() {
        *x = (*x - threshold).max(0.0);
    }
}

fn best_grid_point(gram: &[Vec<f64>], m: usize, resolution: usize) -> Vec<f64> {
    let mut best = vec![1.0 / m as f64; m];
    let mut best_f = quad_form(gram, &best);
    let mut counts = vec![0usize; m];
    enumerate_compositions(resolution, m, 0, &mut counts, &mut |c| {
        let alpha: Vec<f64> = c.iter().map(|&k| k as f64 / resolution as f64).collect();
        let f = quad_form(gram, &alpha);
        if f < best_f {
            best_f = f;
            best = alpha;
        }
    });
    best
}

fn enumerate_compositions(
    remaining: usize,
    slots: usize,
    idx: usize,
    counts: &mut [usize],
    visit: &mut impl FnMut(&[usize]),
) {
    if idx == slots - 1 {
        counts[idx] = remaining;
        visit(counts);
        return;
    }
    for k in 0..=remaining {
        counts[idx] = k;
        enumerate_compositions(remaining - k, slots, idx + 1, counts, visit);
    }
}

fn power_iteration_max_eig(gram: &[Vec<f64>]) -> f64 {
    let m = gram.len();
    let mut v = vec![1.0 / (m as f64).sqrt(); m];
    let mut eig = 0.0;
    for _ in 0..200 {
        let w = mat_vec(gram, &v);
        let norm = dot(&w, &w).sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        eig = norm;
        v = w.iter().map(|x| x / norm).collect();
    }
    eig
}

fn assemble(z: &[f64], candidates: &[&[f64]], alpha: &[f64]) -> Projection {
    let n = z.len();
    let mut weights = alpha.to_vec();
    for w in &mut weights {
        if *w < 0.0 {
            *w = 0.0;
        }
    }
    let sum: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= sum;
    }
    let mut point = vec![0.0; n];
    for (x, &w) in candidates.iter().zip(&weights) {
        for (p, &xi) in point.iter_mut().zip(*x) {
            *p += w * xi;
        }
    }
    let distance = z
        .iter()
        .zip(&point)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    Projection {
        distance,
        weights,
        point,
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn mat_vec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| dot(row, v)).collect()
}

fn quad_form(m: &[Vec<f64>], v: &[f64]) -> f64 {
    dot(v, &mat_vec(m, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// The worked 4×4 example: column maxima 6, 7, 4, 5.
    pub(crate) const WORKED_MATRIX: [[f64; 4]; 4] = [
        [5.0, 1.0, 2.0, 5.0],
        [1.0, 5.0, 1.0, 2.0],
        [0.0, 2.0, 2.0, 5.0],
        [6.0, 7.0, 4.0, 0.0],
    ];

    fn worked_matrix() -> Vec<Vec<f64>> {
        WORKED_MATRIX.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn full_min_max_worked_example() {
        assert_eq!(full_min_max(&worked_matrix()), (2, 4.0));
    }

    #[test]
    fn full_min_max_tie_takes_lowest_index() {
        let m = vec![vec![5.0, 5.0], vec![5.0, 5.0]];
        assert_eq!(full_min_max(&m), (0, 5.0));
    }

    #[test]
    fn full_min_max_single_row_reduces_to_min() {
        assert_eq!(full_min_max(&[vec![3.0, 1.0, 2.0]]), (1, 1.0));
    }

    #[test]
    fn simplex_projection_basics() {
        let mut v = vec![0.2, 0.3, 0.5];
        project_onto_simplex(&mut v);
        assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((v[0] - 0.2).abs() < 1e-12);

        let mut v = vec![10.0, 0.0];
        project_onto_simplex(&mut v);
        assert_eq!(v, vec![1.0, 0.0]);

        let mut v = vec![-5.0, -5.0];
        project_onto_simplex(&mut v);
        assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(v.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn reference_projection_trivial_cases() {
        let p = reference_projection(&[2.0, 0.0], &[&[0.0, 0.0]], 1e-18).unwrap();
        assert!((p.distance - 2.0).abs() < 1e-9);
        let p = reference_projection(&[0.0, 0.0], &[&[1.0, -1.0], &[1.0, 1.0]], 1e-18).unwrap();
        assert!((p.distance - 1.0).abs() < 1e-9);
        assert!((p.weights[0] - 0.5).abs() < 1e-6);
    }

    #[test]
    fn agrees_with_active_set_solver_on_random_instances() {
        use crate::projection::{distance_to_hull, SolverConfig};
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let cfg = SolverConfig::default();
        // Includes the 20-points-in-R3 shape alongside smaller ones.
        for trial in 0..60 {
            let (m, n) = if trial % 3 == 0 {
                (20, 3)
            } else {
                (rng.random_range(1..=8), rng.random_range(1..=5))
            };
            let pts: Vec<Vec<f64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.random_range(-2.0..2.0)).collect())
                .collect();
            let z: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
            let cands: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
            let fast = distance_to_hull(&z, &cands, &cfg).unwrap();
            let slow = reference_projection(&z, &cands, 1e-13).unwrap();
            assert!(
                (fast.distance - slow.distance).abs() <= 1e-6,
                "trial {trial}: {} vs {}",
                fast.distance,
                slow.distance
            );
        }
    }

    #[test]
    fn membership_iff_zero_distance() {
        use crate::projection::{distance_to_hull, SolverConfig};
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let cfg = SolverConfig::default();
        for trial in 0..60 {
            let m = rng.random_range(2..=8);
            let n = rng.random_range(1..=5);
            let pts: Vec<Vec<f64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.random_range(-2.0..2.0)).collect())
                .collect();
            let cands: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
            // Alternate between a known hull member (random convex
            // combination) and an arbitrary query.
            let z: Vec<f64> = if trial % 2 == 0 {
                let mut w: Vec<f64> = (0..m).map(|_| rng.random_range(0.0..1.0)).collect();
                let s: f64 = w.iter().sum();
                w.iter_mut().for_each(|x| *x /= s);
                (0..n)
                    .map(|j| pts.iter().zip(&w).map(|(p, &wi)| wi * p[j]).sum())
                    .collect()
            } else {
                (0..n).map(|_| rng.random_range(-3.0..3.0)).collect()
            };
            let tol = 1e-6;
            let fast_inside = distance_to_hull(&z, &cands, &cfg).unwrap().distance <= tol;
            let slow_inside = reference_projection(&z, &cands, 1e-14).unwrap().distance <= tol;
            assert_eq!(fast_inside, slow_inside, "trial {trial}");
            if trial % 2 == 0 {
                assert!(fast_inside, "trial {trial}: convex combination not inside");
            }
        }
    }

    #[test]
    fn is_extreme_segment_and_triangle() {
        let seg = PointSet::from_slices(&[&[0.0], &[1.0], &[2.0]]);
        assert!(!is_extreme(1, &seg, 1e-9).unwrap());
        assert!(is_extreme(0, &seg, 1e-9).unwrap());
        assert!(is_extreme(2, &seg, 1e-9).unwrap());

        let tri = PointSet::from_slices(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]);
        for i in 0..3 {
            assert!(is_extreme(i, &tri, 1e-9).unwrap());
        }
    }

    #[test]
    fn hull_2d_unit_square_ccw() {
        let sq = PointSet::from_slices(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]]);
        let hull = exact_hull_2d(&sq);
        assert_eq!(hull, vec![0, 1, 2, 3]);
    }

    #[test]
    fn hull_2d_ignores_center_and_edge_midpoints() {
        let pts = PointSet::from_slices(&[
            &[0.0, 0.0],
            &[1.0, 0.0],
            &[1.0, 1.0],
            &[0.0, 1.0],
            &[0.5, 0.5],
            &[0.5, 0.0],
            &[1.0, 0.5],
        ]);
        let mut hull = exact_hull_2d(&pts);
        hull.sort_unstable();
        assert_eq!(hull, vec![0, 1, 2, 3]);
    }

    #[test]
    fn hull_2d_collinear_set_keeps_endpoints() {
        let pts = PointSet::from_slices(&[&[0.0, 0.0], &[1.0, 1.0], &[2.0, 2.0], &[3.0, 3.0]]);
        let mut hull = exact_hull_2d(&pts);
        hull.sort_unstable();
        assert_eq!(hull, vec![0, 3]);
    }

    #[test]
    fn hull_2d_agrees_with_extremeness_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10 {
            let rows: Vec<Vec<f64>> = (0..30)
                .map(|_| vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)])
                .collect();
            let points = PointSet::from_rows(&rows).unwrap().points;
            let hull: std::collections::HashSet<usize> =
                exact_hull_2d(&points).into_iter().collect();
            for i in 0..points.count() {
                let extreme = is_extreme(i, &points, 1e-7).unwrap();
                assert_eq!(extreme, hull.contains(&i), "index {i}");
            }
        }
    }
}
