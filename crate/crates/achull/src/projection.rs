//! Euclidean projection of a point onto the convex hull of a candidate set.
//!
//! `distance_to_hull` solves
//!
//! ```text
//!     minimize    ‖z − Σᵢ αᵢ xᵢ‖²
//!     subject to  αᵢ ≥ 0,  Σᵢ αᵢ = 1
//! ```
//!
//! with an active-set (min-norm-point) method. The working set ("corral")
//! holds the candidates with positive weight; each outer cycle adds the most
//! violating candidate and then re-solves the affine least-squares problem
//! over the corral, dropping members until all weights are positive. The
//! method terminates in finitely many steps, so distances of points inside
//! the hull come out at machine precision rather than at the tolerance —
//! interior-point detection depends on that.
//!
//! Correctness of a result is certified without trusting the iteration: a
//! feasible `p` is the projection iff `(z − p)·(xⱼ − p) ≤ 0` for every
//! candidate `xⱼ`. The solver stops once that holds within `tol_opt`.

use crate::error::{Error, Result};

/// Tuning for the projection solver.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Optimality-gap tolerance for the certificate
    /// `max_j (z − p)·(xⱼ − p) ≤ tol_opt`. `None` resolves to
    /// `1e-9 ×` squared bounding-box diagonal of the candidates, which makes
    /// behavior invariant under uniform rescaling of the data.
    pub tol_opt: Option<f64>,
    /// Cap on outer solver cycles before giving up with a convergence error.
    pub max_iterations: usize,
    /// Reported solution-accuracy knob, echoed into run reports. Does not
    /// steer the active-set iteration; `tol_opt` does.
    pub epsilon0: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol_opt: None,
            max_iterations: 10_000,
            epsilon0: 1e-9,
        }
    }
}

impl SolverConfig {
    /// The certificate tolerance this config yields for a given problem
    /// instance. The query point participates in the scale: certificate
    /// terms grow with the query's distance, so their float noise does too.
    pub fn resolved_tol(&self, z: &[f64], candidates: &[&[f64]]) -> f64 {
        match self.tol_opt {
            Some(t) => t,
            None => (1e-9 * bbox_diag_sq(z, candidates)).max(f64::MIN_POSITIVE),
        }
    }

    fn validate(&self) -> Result<()> {
        if let Some(t) = self.tol_opt {
            if !t.is_finite() || t <= 0.0 {
                return Err(Error::contract(format!(
                    "tol_opt must be positive, got {t}"
                )));
            }
        }
        if self.max_iterations == 0 {
            return Err(Error::contract("max_iterations must be >= 1"));
        }
        Ok(())
    }
}

/// Result of projecting `z` onto `conv{x₁, …, x_m}`.
#[derive(Debug, Clone)]
pub struct Projection {
    /// Euclidean distance from `z` to its projection.
    pub distance: f64,
    /// Simplex weights over the candidate set, aligned with the input order.
    /// Nonnegative and summing to one (tiny negative round-off is clamped).
    pub weights: Vec<f64>,
    /// The projected point `Σᵢ αᵢ xᵢ`.
    pub point: Vec<f64>,
}

impl Projection {
    /// Worst violation of the optimality certificate over `candidates`:
    /// `max_j (z − p)·(xⱼ − p)`. Nonpositive (within the solve tolerance)
    /// for a true projection.
    pub fn certificate_gap(&self, z: &[f64], candidates: &[&[f64]]) -> f64 {
        let r: Vec<f64> = z.iter().zip(&self.point).map(|(a, b)| a - b).collect();
        let rp = dot(&r, &self.point);
        candidates
            .iter()
            .map(|x| dot(&r, x) - rp)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Distance from `z` to the convex hull of `candidates`, with the minimizing
/// weights and projected point.
///
/// Errors with `Error::Contract` on dimension mismatches or non-finite
/// input, and with `Error::Convergence` (carrying the best iterate) if the
/// iteration cap is reached before the certificate holds.
pub fn distance_to_hull(
    z: &[f64],
    candidates: &[&[f64]],
    config: &SolverConfig,
) -> Result<Projection> {
    config.validate()?;
    let m = candidates.len();
    if m == 0 {
        return Err(Error::contract("candidate set must be nonempty"));
    }
    let n = z.len();
    if n == 0 {
        return Err(Error::contract("query point must have dimension >= 1"));
    }
    if z.iter().any(|v| !v.is_finite()) {
        return Err(Error::contract("query point has non-finite coordinates"));
    }
    for (j, x) in candidates.iter().enumerate() {
        if x.len() != n {
            return Err(Error::contract(format!(
                "candidate {j} has dimension {}, query has {n}",
                x.len()
            )));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::contract(format!(
                "candidate {j} has non-finite coordinates"
            )));
        }
    }
    let tol = config.resolved_tol(z, candidates);

    // Work translated: y_j = x_j − z, project the origin onto conv{y_j}.
    // The current iterate in translated coordinates is q = p − z.
    let start = init_closest(z, candidates);
    let mut corral: Vec<usize> = vec![start];
    let mut corral_y: Vec<Vec<f64>> = vec![translated(candidates[start], z)];
    let mut gram: Vec<Vec<f64>> = vec![vec![dot(&corral_y[0], &corral_y[0])]];
    let mut weights: Vec<f64> = vec![1.0];
    let mut q = combination(&corral_y, &weights, n);

    for _cycle in 0..config.max_iterations {
        // Most violating candidate: argmax_j (z − p)·(x_j − p), computed as
        // ‖q‖² − q·y_j without materializing y_j.
        let qq = dot(&q, &q);
        let qz = dot(&q, z);
        let mut best = 0usize;
        let mut best_gap = f64::NEG_INFINITY;
        for (j, x) in candidates.iter().enumerate() {
            let gap = qq - (dot(&q, x) - qz);
            if gap > best_gap {
                best_gap = gap;
                best = j;
            }
        }
        if best_gap <= tol {
            return Ok(finish(z, candidates, &corral, &weights));
        }
        if corral.contains(&best) {
            // The violation sits below what the affine solves can resolve;
            // the requested tolerance is finer than float precision allows.
            return Err(stalled(
                z, candidates, &corral, &weights, best_gap, tol, _cycle,
            ));
        }

        // Grow the corral with the new candidate.
        let y_new = translated(candidates[best], z);
        let mut cross: Vec<f64> = corral_y.iter().map(|y| dot(y, &y_new)).collect();
        cross.push(dot(&y_new, &y_new));
        for (row, &c) in gram.iter_mut().zip(&cross) {
            row.push(c);
        }
        gram.push(cross);
        corral.push(best);
        corral_y.push(y_new);
        weights.push(0.0);

        // Minor cycles: move to the affine minimizer, shedding members whose
        // weight would go nonpositive, until the minimizer is feasible.
        loop {
            let beta = match affine_minimizer(&gram) {
                Some(b) => b,
                None => {
                    return Err(stalled(
                        z, candidates, &corral, &weights, best_gap, tol, _cycle,
                    ))
                }
            };
            if beta.iter().all(|&b| b > 0.0) {
                weights = beta;
                break;
            }
            let mut theta = f64::INFINITY;
            for (i, &b) in beta.iter().enumerate() {
                if b <= 0.0 {
                    let t = weights[i] / (weights[i] - b);
                    if t < theta {
                        theta = t;
                    }
                }
            }
            if !theta.is_finite() || theta <= 0.0 {
                return Err(stalled(
                    z, candidates, &corral, &weights, best_gap, tol, _cycle,
                ));
            }
            let theta = theta.min(1.0);
            for (w, &b) in weights.iter_mut().zip(&beta) {
                *w = (1.0 - theta) * *w + theta * b;
            }
            // Drop every member driven to (or past) zero.
            let mut removed_any = false;
            let mut i = 0;
            while i < weights.len() {
                let hit_zero = beta[i] <= 0.0 && weights[i] <= weights[i].abs() * 1e-12 + 1e-300;
                if weights[i] < 0.0 || hit_zero {
                    weights.remove(i);
                    corral.remove(i);
                    corral_y.remove(i);
                    gram.remove(i);
                    for row in &mut gram {
                        row.remove(i);
                    }
                    removed_any = true;
                } else {
                    i += 1;
                }
            }
            if !removed_any {
                // θ < 1 must zero at least one member; if rounding hid it,
                // drop the smallest-weight member with nonpositive target.
                if let Some(i) = (0..weights.len())
                    .filter(|&i| beta[i] <= 0.0)
                    .min_by(|&a, &b| weights[a].total_cmp(&weights[b]))
                {
                    weights.remove(i);
                    corral.remove(i);
                    corral_y.remove(i);
                    gram.remove(i);
                    for row in &mut gram {
                        row.remove(i);
                    }
                } else {
                    return Err(stalled(
                        z, candidates, &corral, &weights, best_gap, tol, _cycle,
                    ));
                }
            }
            let sum: f64 = weights.iter().sum();
            for w in &mut weights {
                *w /= sum;
            }
        }
        q = combination(&corral_y, &weights, n);
    }

    let best = finish(z, candidates, &corral, &weights);
    let gap = best.certificate_gap(z, candidates);
    Err(Error::Convergence {
        iterations: config.max_iterations,
        gap,
        tolerance: tol,
        best: Box::new(best),
    })
}

/// Index of the candidate nearest to `z` (the natural starting corral).
fn init_closest(z: &[f64], candidates: &[&[f64]]) -> usize {
    let mut best = 0usize;
    let mut best_d = f64::INFINITY;
    for (j, x) in candidates.iter().enumerate() {
        let d: f64 = x.iter().zip(z).map(|(a, b)| (a - b) * (a - b)).sum();
        if d < best_d {
            best_d = d;
            best = j;
        }
    }
    best
}

fn translated(x: &[f64], z: &[f64]) -> Vec<f64> {
    x.iter().zip(z).map(|(a, b)| a - b).collect()
}

fn combination(vectors: &[Vec<f64>], weights: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n];
    for (v, &w) in vectors.iter().zip(weights) {
        for (o, &vi) in out.iter_mut().zip(v) {
            *o += w * vi;
        }
    }
    out
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Minimize `‖Σ βᵢ yᵢ‖²` subject to `Σ βᵢ = 1` with `β` free in sign, given
/// the Gram matrix of the `yᵢ`. KKT system solved by dense partial-pivot
/// elimination; `None` if it is numerically singular even after a tiny
/// diagonal regularization.
fn affine_minimizer(gram: &[Vec<f64>]) -> Option<Vec<f64>> {
    let c = gram.len();
    let dim = c + 1;
    let max_diag = gram
        .iter()
        .enumerate()
        .map(|(i, row)| row[i])
        .fold(0.0f64, f64::max);
    for &reg in &[0.0, 1e-14 * max_diag + 1e-300, 1e-10 * max_diag + 1e-280] {
        let mut a = vec![0.0; dim * dim];
        let mut b = vec![0.0; dim];
        for i in 0..c {
            for j in 0..c {
                a[i * dim + j] = gram[i][j];
            }
            a[i * dim + i] += reg;
            a[i * dim + c] = 1.0;
            a[c * dim + i] = 1.0;
        }
        b[c] = 1.0;
        if solve_dense(&mut a, &mut b, dim) {
            b.truncate(c);
            return Some(b);
        }
    }
    None
}

/// In-place Gaussian elimination with partial pivoting on an `n×n` system.
/// Returns false if a pivot vanishes.
fn solve_dense(a: &mut [f64], b: &mut [f64], n: usize) -> bool {
    for k in 0..n {
        let mut piv = k;
        let mut piv_abs = a[k * n + k].abs();
        for r in k + 1..n {
            let v = a[r * n + k].abs();
            if v > piv_abs {
                piv_abs = v;
                piv = r;
            }
        }
        if piv_abs == 0.0 {
            return false;
        }
        if piv != k {
            for c in 0..n {
                a.swap(k * n + c, piv * n + c);
            }
            b.swap(k, piv);
        }
        let pivot = a[k * n + k];
        for r in k + 1..n {
            let f = a[r * n + k] / pivot;
            if f == 0.0 {
                continue;
            }
            for c in k..n {
                a[r * n + c] -= f * a[k * n + c];
            }
            b[r] -= f * b[k];
        }
    }
    for k in (0..n).rev() {
        let mut s = b[k];
        for c in k + 1..n {
            s -= a[k * n + c] * b[c];
        }
        b[k] = s / a[k * n + k];
    }
    true
}

/// Assemble the output `Projection`: clamp round-off negatives, renormalize,
/// and recompute the projected point from the original coordinates.
fn finish(z: &[f64], candidates: &[&[f64]], corral: &[usize], weights: &[f64]) -> Projection {
    let m = candidates.len();
    let n = z.len();
    let mut alpha = vec![0.0; m];
    for (&j, &w) in corral.iter().zip(weights) {
        alpha[j] += w.max(0.0);
    }
    let sum: f64 = alpha.iter().sum();
    for a in &mut alpha {
        *a /= sum;
    }
    let mut point = vec![0.0; n];
    for (x, &a) in candidates.iter().zip(&alpha) {
        if a != 0.0 {
            for (p, &xi) in point.iter_mut().zip(*x) {
                *p += a * xi;
            }
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
        weights: alpha,
        point,
    }
}

fn stalled(
    z: &[f64],
    candidates: &[&[f64]],
    corral: &[usize],
    weights: &[f64],
    gap: f64,
    tol: f64,
    iterations: usize,
) -> Error {
    Error::Convergence {
        iterations,
        gap,
        tolerance: tol,
        best: Box::new(finish(z, candidates, corral, weights)),
    }
}

/// Squared bounding-box diagonal of the instance (tolerance scale).
fn bbox_diag_sq(z: &[f64], points: &[&[f64]]) -> f64 {
    let n = z.len();
    let mut lo = z.to_vec();
    let mut hi = z.to_vec();
    for x in points {
        for j in 0..n {
            if x[j] < lo[j] {
                lo[j] = x[j];
            }
            if x[j] > hi[j] {
                hi[j] = x[j];
            }
        }
    }
    lo.iter().zip(&hi).map(|(a, b)| (b - a) * (b - a)).sum()
}
