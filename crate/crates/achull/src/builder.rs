//! Greedy construction of an ε-approximate convex hull.
//!
//! Starting from one guaranteed-extreme point, each iteration adds the
//! candidate whose inclusion minimizes the worst-case distance of the
//! remaining points to the current hull (found by the directed search over
//! the implicit distance matrix), removes points detected inside the hull
//! from further consideration, and prunes hull vertices that later become
//! redundant. The loop stops at the vertex budget, at the target error, or
//! when no candidates remain.

use crate::error::{Error, Result};
use crate::point_set::PointSet;
use crate::projection::{distance_to_hull, SolverConfig};
use crate::search::{directed_min_max, directed_min_max_parallel, MatrixOracle, TieBreak};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

/// Tie handling for the directed search inside the build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieMode {
    /// Lowest column index wins; builds are exactly reproducible.
    Deterministic,
    /// Uniform choice among tied columns from a ChaCha stream with this seed.
    SeededRandom(u64),
}

/// Parameters of a hull build.
#[derive(Debug, Clone)]
pub struct BuildConfig {
    /// Vertex budget `V`; the build stops once the hull reaches this size.
    pub max_vertices: usize,
    /// Target worst-case distance; the build stops once the iteration error
    /// drops to this value.
    pub epsilon_des: f64,
    /// Distance below which a point counts as lying inside the hull.
    /// `None` resolves to `1e-9 ×` the bounding-box diagonal.
    pub tol_interior: Option<f64>,
    pub solver: SolverConfig,
    pub tie_mode: TieMode,
    /// Evaluate the first row of each search by parallel map (identical
    /// results; uses the ambient rayon pool).
    pub parallel_first_row: bool,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            max_vertices: usize::MAX,
            epsilon_des: 0.0,
            tol_interior: None,
            solver: SolverConfig::default(),
            tie_mode: TieMode::Deterministic,
            parallel_first_row: false,
        }
    }
}

impl BuildConfig {
    fn validate(&self) -> Result<()> {
        if self.max_vertices == 0 {
            return Err(Error::contract("max_vertices must be >= 1"));
        }
        if !self.epsilon_des.is_finite() || self.epsilon_des < 0.0 {
            return Err(Error::contract(format!(
                "epsilon_des must be a finite nonnegative number, got {}",
                self.epsilon_des
            )));
        }
        if let Some(t) = self.tol_interior {
            if !t.is_finite() || t <= 0.0 {
                return Err(Error::contract(format!(
                    "tol_interior must be positive, got {t}"
                )));
            }
        }
        if self.solver.max_iterations == 0 {
            return Err(Error::contract("solver.max_iterations must be >= 1"));
        }
        if let Some(t) = self.solver.tol_opt {
            if !t.is_finite() || t <= 0.0 {
                return Err(Error::contract(format!(
                    "tol_opt must be positive, got {t}"
                )));
            }
        }
        Ok(())
    }

    /// Interior threshold and solver tolerance pinned to the data scale.
    pub(crate) fn resolve(&self, points: &PointSet) -> (f64, SolverConfig) {
        let diag = points.bbox_diagonal();
        let tol_interior = self
            .tol_interior
            .unwrap_or(1e-9 * diag)
            .max(f64::MIN_POSITIVE);
        let mut solver = self.solver.clone();
        solver.tol_opt = Some(
            solver
                .tol_opt
                .unwrap_or(1e-9 * diag * diag)
                .max(f64::MIN_POSITIVE),
        );
        (tol_interior, solver)
    }
}

/// An ordered subset of point indices whose hull approximates the input.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexSet {
    /// Distinct indices into the source `PointSet`, in insertion order.
    pub indices: Vec<usize>,
    /// Worst-case distance achieved by the most recent completed iteration;
    /// `INFINITY` until an iteration has run.
    pub epsilon_achieved: f64,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.contains(&index)
    }
}

/// One completed build iteration.
#[derive(Debug, Clone)]
pub struct BuildStep {
    /// Iteration number `k`, starting at 1.
    pub iteration: usize,
    /// Original index of the vertex added this iteration.
    pub chosen: usize,
    /// Min-max distance achieved by adding it.
    pub epsilon: f64,
    /// Points newly detected inside the hull this iteration.
    pub interior_found: usize,
    /// Cumulative interior count after this iteration.
    pub interior_total: usize,
    /// Oracle evaluations the directed search spent.
    pub evals_used: usize,
    /// Vertices removed by the post-iteration prune.
    pub pruned: Vec<usize>,
}

/// Work counters for a build.
#[derive(Debug, Clone, Default)]
pub struct BuildStats {
    /// Projection solves performed (search, pruning, and final evaluation).
    pub distance_calls: u64,
    /// Wall time inside the projection solver.
    pub solver_seconds: f64,
    /// Wall time inside the directed searches (includes their solves).
    pub search_seconds: f64,
    /// Wall time of the whole build.
    pub total_seconds: f64,
}

/// Per-iteration records and totals for a build.
#[derive(Debug, Clone, Default)]
pub struct BuildTrace {
    pub steps: Vec<BuildStep>,
    pub stats: BuildStats,
}

impl BuildTrace {
    /// Number of greedy iterations `K`.
    pub fn iterations(&self) -> usize {
        self.steps.len()
    }
}

/// Accumulates projection-solve counts and wall time; shared with the
/// (possibly parallel) search oracle, hence atomic.
#[derive(Default)]
struct SolveClock {
    calls: AtomicU64,
    nanos: AtomicU64,
}

impl SolveClock {
    fn timed(
        &self,
        z: &[f64],
        candidates: &[&[f64]],
        config: &SolverConfig,
    ) -> Result<crate::projection::Projection> {
        let t = Instant::now();
        let out = distance_to_hull(z, candidates, config);
        self.nanos
            .fetch_add(t.elapsed().as_nanos() as u64, Ordering::Relaxed);
        self.calls.fetch_add(1, Ordering::Relaxed);
        out
    }

    fn seconds(&self) -> f64 {
        self.nanos.load(Ordering::Relaxed) as f64 * 1e-9
    }
}

/// The implicit matrix `E[i][j] = d(z_i, hull ∪ {x_j})` over the active
/// points, with rows and columns both enumerating the active set.
struct HullDistanceOracle<'a> {
    points: &'a PointSet,
    active: &'a [usize],
    hull_rows: Vec<&'a [f64]>,
    solver: &'a SolverConfig,
    clock: &'a SolveClock,
}

impl MatrixOracle for HullDistanceOracle<'_> {
    fn rows(&self) -> usize {
        self.active.len()
    }
    fn cols(&self) -> usize {
        self.active.len()
    }
    fn eval(&self, row: usize, col: usize) -> Result<f64> {
        let z = self.points.row(self.active[row]);
        let mut candidates = self.hull_rows.clone();
        candidates.push(self.points.row(self.active[col]));
        Ok(self.clock.timed(z, &candidates, self.solver)?.distance)
    }
}

/// Starting vertex: the lexicographically smallest point. It attains the
/// minimum in coordinate 1 (ties resolved by the remaining coordinates), so
/// it is an extreme point of the hull.
pub fn initialize(points: &PointSet) -> VertexSet {
    let start = (0..points.count())
        .min_by(|&a, &b| lex_cmp(points.row(a), points.row(b)))
        .expect("point sets are nonempty by construction");
    VertexSet {
        indices: vec![start],
        epsilon_achieved: f64::INFINITY,
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

/// Result of one greedy step.
#[derive(Debug)]
pub struct GreedyChoice {
    /// Original index of the best candidate.
    pub chosen: usize,
    /// Min-max distance attained by adding it.
    pub epsilon: f64,
    /// Full distance column of the chosen candidate, aligned with `active`.
    pub column: Vec<f64>,
    /// Oracle evaluations spent by the directed search.
    pub evals_used: usize,
}

/// Pick the candidate from `active` whose addition to the hull minimizes the
/// worst-case distance of the active points, via the directed search.
///
/// `active` must be nonempty and disjoint from the hull. Solver convergence
/// failures propagate.
pub fn greedy_step(
    points: &PointSet,
    active: &[usize],
    vertices: &VertexSet,
    config: &BuildConfig,
    tie: TieBreak,
) -> Result<GreedyChoice> {
    config.validate()?;
    let (_, solver) = config.resolve(points);
    let clock = SolveClock::default();
    greedy_step_inner(
        points,
        active,
        vertices,
        &solver,
        config.parallel_first_row,
        tie,
        &clock,
    )
}

fn greedy_step_inner(
    points: &PointSet,
    active: &[usize],
    vertices: &VertexSet,
    solver: &SolverConfig,
    parallel: bool,
    tie: TieBreak,
    clock: &SolveClock,
) -> Result<GreedyChoice> {
    if active.is_empty() {
        return Err(Error::contract(
            "greedy_step requires a nonempty active set",
        ));
    }
    let oracle = HullDistanceOracle {
        points,
        active,
        hull_rows: points.rows_for(&vertices.indices),
        solver,
        clock,
    };
    let outcome = if parallel {
        directed_min_max_parallel(&oracle, tie)?
    } else {
        directed_min_max(&oracle, tie)?
    };
    Ok(GreedyChoice {
        chosen: active[outcome.col],
        epsilon: outcome.value,
        column: outcome.state.evaluated[outcome.col].clone(),
        evals_used: outcome.evals_used,
    })
}

/// Active points lying inside the enlarged hull: entries of the winning
/// column at or below `tol_interior`, excluding the chosen vertex itself
/// (it joins the hull instead). Returns original indices.
pub fn detect_interior(
    winning_column: &[f64],
    active: &[usize],
    chosen: usize,
    tol_interior: f64,
) -> Vec<usize> {
    winning_column
        .iter()
        .zip(active)
        .filter(|&(&d, &idx)| d <= tol_interior && idx != chosen)
        .map(|(_, &idx)| idx)
        .collect()
}

/// Remove vertices that lie inside the hull of the remaining ones.
///
/// Scans in stored order; a vertex whose leave-one-out distance is at most
/// `tol_interior` is dropped and the scan restarts, until a full pass keeps
/// everything. Each removal leaves the hull unchanged (up to the tolerance),
/// so the order only matters for degenerate ties and is fixed here.
pub fn prune_vertices(
    points: &PointSet,
    vertices: &VertexSet,
    config: &BuildConfig,
) -> Result<VertexSet> {
    config.validate()?;
    if vertices.is_empty() {
        return Err(Error::contract(
            "prune_vertices requires a nonempty vertex set",
        ));
    }
    let (tol_interior, solver) = config.resolve(points);
    let clock = SolveClock::default();
    let mut indices = vertices.indices.clone();
    prune_in_place(points, &mut indices, &solver, tol_interior, &clock)?;
    Ok(VertexSet {
        indices,
        epsilon_achieved: vertices.epsilon_achieved,
    })
}

fn prune_in_place(
    points: &PointSet,
    indices: &mut Vec<usize>,
    solver: &SolverConfig,
    tol_interior: f64,
    clock: &SolveClock,
) -> Result<Vec<usize>> {
    let mut removed = Vec::new();
    'rescan: while indices.len() > 1 {
        for pos in 0..indices.len() {
            let others: Vec<&[f64]> = indices
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != pos)
                .map(|(_, &i)| points.row(i))
                .collect();
            let d = clock
                .timed(points.row(indices[pos]), &others, solver)?
                .distance;
            if d <= tol_interior {
                removed.push(indices.remove(pos));
                continue 'rescan;
            }
        }
        break;
    }
    Ok(removed)
}

/// Run the full greedy build on `points`.
///
/// Returns the vertex set with its achieved worst-case error and the
/// per-iteration trace. On termination every input point is within
/// `epsilon_achieved + tol_interior` of the hull of the returned vertices.
pub fn build(points: &PointSet, config: &BuildConfig) -> Result<(VertexSet, BuildTrace)> {
    config.validate()?;
    let started = Instant::now();
    let (tol_interior, solver) = config.resolve(points);
    let mut rng = match config.tie_mode {
        TieMode::Deterministic => None,
        TieMode::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let clock = SolveClock::default();
    let mut search_nanos = 0u64;

    let n = points.count();
    let mut hull = initialize(points);
    let mut in_hull = vec![false; n];
    in_hull[hull.indices[0]] = true;
    let mut interior = vec![false; n];
    let mut epsilon = f64::INFINITY;
    let mut interior_total = 0usize;
    let mut steps: Vec<BuildStep> = Vec::new();

    loop {
        if hull.len() >= config.max_vertices || epsilon <= config.epsilon_des {
            break;
        }
        let active: Vec<usize> = (0..n).filter(|&i| !in_hull[i] && !interior[i]).collect();
        if active.is_empty() {
            // Everything outside the hull was certified interior; the hull
            // is exact at this tolerance.
            epsilon = 0.0;
            break;
        }

        let tie = match rng.as_mut() {
            Some(r) => TieBreak::Seeded(r),
            None => TieBreak::LowestIndex,
        };
        let search_started = Instant::now();
        let choice = greedy_step_inner(
            points,
            &active,
            &hull,
            &solver,
            config.parallel_first_row,
            tie,
            &clock,
        )?;
        search_nanos += search_started.elapsed().as_nanos() as u64;

        let found = detect_interior(&choice.column, &active, choice.chosen, tol_interior);
        for &i in &found {
            interior[i] = true;
        }
        interior_total += found.len();

        hull.indices.push(choice.chosen);
        in_hull[choice.chosen] = true;

        let pruned = prune_in_place(points, &mut hull.indices, &solver, tol_interior, &clock)?;
        for &i in &pruned {
            // A pruned vertex sits inside the hull of the others, so it is
            // an interior point and must not re-enter the candidate pool.
            in_hull[i] = false;
            interior[i] = true;
        }
        interior_total += pruned.len();

        epsilon = choice.epsilon;
        steps.push(BuildStep {
            iteration: steps.len() + 1,
            chosen: choice.chosen,
            epsilon: choice.epsilon,
            interior_found: found.len(),
            interior_total,
            evals_used: choice.evals_used,
            pruned,
        });
    }

    if steps.is_empty() && epsilon.is_infinite() {
        // Budget of one vertex (or a single input point): no iteration ran,
        // so evaluate the achieved error directly.
        let hull_rows = points.rows_for(&hull.indices);
        let mut worst = 0.0f64;
        for i in (0..n).filter(|&i| !in_hull[i]) {
            let d = clock.timed(points.row(i), &hull_rows, &solver)?.distance;
            worst = worst.max(d);
        }
        epsilon = worst;
    }
    hull.epsilon_achieved = epsilon;

    let trace = BuildTrace {
        steps,
        stats: BuildStats {
            distance_calls: clock.calls.load(Ordering::Relaxed),
            solver_seconds: clock.seconds(),
            search_seconds: search_nanos as f64 * 1e-9,
            total_seconds: started.elapsed().as_secs_f64(),
        },
    };
    Ok((hull, trace))
}
