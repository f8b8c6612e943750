//! CSV ingestion and JSON run reports.
//!
//! Input is one point per row, UTF-8, configurable delimiter, optional
//! header. Reports are JSON with a fixed key order and a versioned schema;
//! all nondeterministic quantities (wall times) live under the `timing` key
//! so consumers can strip it when comparing runs.

use crate::builder::{BuildConfig, BuildTrace, TieMode, VertexSet};
use crate::error::{Error, Result};
use crate::point_set::PointSet;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// CSV parsing options.
#[derive(Debug, Clone)]
pub struct LoadOptions {
    /// Field delimiter, an ASCII byte. Comma by default.
    pub delimiter: u8,
    /// Skip the first row as a header.
    pub has_header: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            delimiter: b',',
            has_header: false,
        }
    }
}

/// A parsed, deduplicated input file.
#[derive(Debug, Clone)]
pub struct LoadedPoints {
    pub points: PointSet,
    /// For each data row of the file (in order), the index it landed on in
    /// `points`; duplicates map to their representative.
    pub retained: Vec<usize>,
    pub duplicates_removed: usize,
    /// Data rows read, before deduplication.
    pub rows_read: usize,
}

/// Read a CSV file of points. Every row must have the same number of
/// columns and every cell must parse as a finite float; violations report
/// the offending 1-based row (file line) and column.
pub fn load_points(path: &Path, options: &LoadOptions) -> Result<LoadedPoints> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .has_headers(options.has_header)
        .flexible(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(csv_error)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record
            .position()
            .map(|p| p.line() as usize)
            .unwrap_or(rows.len() + 1);
        let mut row = Vec::with_capacity(record.len());
        for (col, cell) in record.iter().enumerate() {
            let value: f64 = cell.parse().map_err(|_| Error::Parse {
                row: line,
                column: Some(col + 1),
                message: format!("cannot parse {cell:?} as a number"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    row: line,
                    column: Some(col + 1),
                    message: format!("non-finite value {cell:?}"),
                });
            }
            row.push(value);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::contract(format!(
            "{} contains no data rows",
            path.display()
        )));
    }
    let rows_read = rows.len();
    let ingested = PointSet::from_rows(&rows)?;
    Ok(LoadedPoints {
        points: ingested.points,
        retained: ingested.retained,
        duplicates_removed: ingested.duplicates_removed,
        rows_read,
    })
}

fn csv_error(e: csv::Error) -> Error {
    let row = e.position().map(|p| p.line() as usize).unwrap_or_default();
    let message = e.to_string();
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        csv::ErrorKind::UnequalLengths {
            expected_len, len, ..
        } => Error::Parse {
            row,
            column: None,
            message: format!("row has {len} fields, expected {expected_len}"),
        },
        _ => Error::Parse {
            row,
            column: None,
            message,
        },
    }
}

/// Versioned JSON report of one hull build.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub input: InputSummary,
    pub config: ConfigEcho,
    pub vertices: Vec<VertexRecord>,
    pub epsilon_achieved: f64,
    pub trace: TraceReport,
    /// Wall-clock measurements; the only nondeterministic section.
    pub timing: TimingReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InputSummary {
    pub path: String,
    pub rows_read: usize,
    pub unique_points: usize,
    pub duplicates_removed: usize,
    pub dimension: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub max_vertices: usize,
    pub epsilon_des: f64,
    /// Resolved interior threshold actually used.
    pub tol_interior: f64,
    pub tie_mode: String,
    pub seed: Option<u64>,
    pub solver: SolverEcho,
    pub threads: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverEcho {
    /// Resolved certificate tolerance actually used.
    pub tol_opt: f64,
    pub max_iterations: usize,
    pub epsilon0: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexRecord {
    /// Index into the deduplicated input ordering.
    pub index: usize,
    pub point: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceReport {
    pub iterations: usize,
    pub distance_calls: u64,
    pub steps: Vec<StepRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepRecord {
    pub iteration: usize,
    pub chosen: usize,
    pub epsilon: f64,
    pub interior_found: usize,
    pub interior_total: usize,
    pub evals_used: usize,
    pub pruned: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TimingReport {
    pub total_seconds: f64,
    pub solver_seconds: f64,
    pub search_seconds: f64,
}

/// Assemble the report for a finished build.
pub fn run_report(
    input_path: &Path,
    loaded: &LoadedPoints,
    config: &BuildConfig,
    threads: usize,
    hull: &VertexSet,
    trace: &BuildTrace,
) -> RunReport {
    let (tol_interior, solver) = config.resolve(&loaded.points);
    let (tie_mode, seed) = match config.tie_mode {
        TieMode::Deterministic => ("deterministic".to_string(), None),
        TieMode::SeededRandom(s) => ("random".to_string(), Some(s)),
    };
    RunReport {
        schema_version: 1,
        input: InputSummary {
            path: input_path.display().to_string(),
            rows_read: loaded.rows_read,
            unique_points: loaded.points.count(),
            duplicates_removed: loaded.duplicates_removed,
            dimension: loaded.points.dim(),
        },
        config: ConfigEcho {
            max_vertices: config.max_vertices,
            epsilon_des: config.epsilon_des,
            tol_interior,
            tie_mode,
            seed,
            solver: SolverEcho {
                tol_opt: solver.tol_opt.expect("resolved"),
                max_iterations: solver.max_iterations,
                epsilon0: solver.epsilon0,
            },
            threads,
        },
        vertices: hull
            .indices
            .iter()
            .map(|&i| VertexRecord {
                index: i,
                point: loaded.points.row(i).to_vec(),
            })
            .collect(),
        epsilon_achieved: hull.epsilon_achieved,
        trace: TraceReport {
            iterations: trace.iterations(),
            distance_calls: trace.stats.distance_calls,
            steps: trace
                .steps
                .iter()
                .map(|s| StepRecord {
                    iteration: s.iteration,
                    chosen: s.chosen,
                    epsilon: s.epsilon,
                    interior_found: s.interior_found,
                    interior_total: s.interior_total,
                    evals_used: s.evals_used,
                    pruned: s.pruned.clone(),
                })
                .collect(),
        },
        timing: TimingReport {
            total_seconds: trace.stats.total_seconds,
            solver_seconds: trace.stats.solver_seconds,
            search_seconds: trace.stats.search_seconds,
        },
    }
}

/// Pretty JSON with a trailing newline; key order follows the struct
/// definitions, so identical runs serialize identically.
pub fn report_to_json(report: &RunReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}
