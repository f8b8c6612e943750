//! Directed search for `min_j max_i E[i][j]` over an implicitly defined
//! matrix, evaluating as few entries as possible.
//!
//! The maximum of any subset of a column's entries is a lower bound on the
//! full column maximum. The search keeps a running maximum per column, always
//! extends the column whose running maximum is currently smallest, and stops
//! when that column is fully evaluated: every other column already has a
//! lower bound at least as large, so the answer is exact. Best case `R+C−1`
//! evaluations, worst case `R·C`.

use crate::error::Result;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// An implicit matrix of nonnegative entries. Evaluations may be expensive
/// (each one is a projection solve in the hull builder); `eval` must be
/// deterministic for fixed `(row, col)` within one search.
pub trait MatrixOracle {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn eval(&self, row: usize, col: usize) -> Result<f64>;
}

/// Dense in-memory matrix, mainly for tests and worked examples.
pub struct DenseMatrix(pub Vec<Vec<f64>>);

impl MatrixOracle for DenseMatrix {
    fn rows(&self) -> usize {
        self.0.len()
    }
    fn cols(&self) -> usize {
        self.0[0].len()
    }
    fn eval(&self, row: usize, col: usize) -> Result<f64> {
        Ok(self.0[row][col])
    }
}

/// How to resolve ties when several columns share the smallest running
/// maximum: lowest index for reproducibility (the default), or uniformly at
/// random from a caller-seeded generator.
pub enum TieBreak<'r> {
    LowestIndex,
    Seeded(&'r mut ChaCha8Rng),
}

/// Running state of a directed search: per-column maxima over the evaluated
/// prefix, per-column counts of evaluated rows, and the evaluated entries
/// themselves (kept so the winning column can seed interior-point
/// detection).
#[derive(Debug, Clone)]
pub struct SearchState {
    /// Running maximum of each column over its evaluated prefix.
    pub col_max: Vec<f64>,
    /// Number of evaluated rows per column; between 1 and `rows` once the
    /// first row is in.
    pub col_count: Vec<usize>,
    /// Evaluated entries per column, in row order.
    pub evaluated: Vec<Vec<f64>>,
}

/// Result of a directed search.
#[derive(Debug)]
pub struct SearchOutcome {
    /// Column attaining `min_j max_i E[i][j]` (up to documented tie-breaking).
    pub col: usize,
    /// The attained min-max value; identical across tie-break choices.
    pub value: f64,
    /// Number of oracle evaluations spent.
    pub evals_used: usize,
    /// Final search state; `state.evaluated[col]` holds the full winning
    /// column.
    pub state: SearchState,
}

impl SearchOutcome {
    /// All entries of the winning column, in row order.
    pub fn winning_column(&self) -> &[f64] {
        &self.state.evaluated[self.col]
    }
}

/// Run the directed search, evaluating the first row serially.
pub fn directed_min_max<O: MatrixOracle>(oracle: &O, tie: TieBreak) -> Result<SearchOutcome> {
    let first: Vec<f64> = (0..oracle.cols())
        .map(|j| oracle.eval(0, j))
        .collect::<Result<_>>()?;
    search_from_first_row(oracle, first, tie)
}

/// Same search, but the first-row entries (which are independent of each
/// other) are computed by a parallel map. The result is identical to the
/// serial version.
pub fn directed_min_max_parallel<O: MatrixOracle + Sync>(
    oracle: &O,
    tie: TieBreak,
) -> Result<SearchOutcome> {
    let first: Vec<f64> = (0..oracle.cols())
        .into_par_iter()
        .map(|j| oracle.eval(0, j))
        .collect::<Result<_>>()?;
    search_from_first_row(oracle, first, tie)
}

fn search_from_first_row<O: MatrixOracle>(
    oracle: &O,
    first_row: Vec<f64>,
    mut tie: TieBreak,
) -> Result<SearchOutcome> {
    let rows = oracle.rows();
    let cols = oracle.cols();
    assert!(rows >= 1 && cols >= 1, "matrix must be nonempty");
    debug_assert_eq!(first_row.len(), cols);

    let mut state = SearchState {
        evaluated: first_row.iter().map(|&v| vec![v]).collect(),
        col_count: vec![1; cols],
        col_max: first_row,
    };
    let mut evals_used = cols;
    loop {
        let j = argmin_tie(&state.col_max, &mut tie);
        if state.col_count[j] == rows {
            // Fully evaluated and still the smallest running maximum: every
            // other column's true maximum is at least this value.
            let value = state.col_max[j];
            return Ok(SearchOutcome {
                col: j,
                value,
                evals_used,
                state,
            });
        }
        let row = state.col_count[j];
        let v = oracle.eval(row, j)?;
        evals_used += 1;
        state.evaluated[j].push(v);
        if v > state.col_max[j] {
            state.col_max[j] = v;
        }
        state.col_count[j] += 1;
    }
}

/// Index of the minimum entry; ties resolved per `tie`. Comparison is exact
/// float equality — tolerances belong to the distance solver, not here.
fn argmin_tie(values: &[f64], tie: &mut TieBreak) -> usize {
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    match tie {
        TieBreak::LowestIndex => values.iter().position(|&v| v == min).unwrap(),
        TieBreak::Seeded(rng) => {
            let tied: Vec<usize> = values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == min)
                .map(|(i, _)| i)
                .collect();
            tied[rng.random_range(0..tied.len())]
        }
    }
}
