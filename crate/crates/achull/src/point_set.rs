//! Finite point sets in `ℝⁿ` stored as a dense row-major matrix.

use crate::error::{Error, Result};
use std::collections::HashMap;

/// An immutable set of `count` pairwise-distinct points in `dim` dimensions.
///
/// All coordinates are finite and duplicate rows are removed at construction,
/// so downstream code can rely on uniqueness without re-checking.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    data: Vec<f64>,
    count: usize,
    dim: usize,
}

/// Outcome of ingesting raw rows: the deduplicated set plus the mapping from
/// each input row to the index it landed on.
#[derive(Debug, Clone)]
pub struct Ingested {
    pub points: PointSet,
    /// `retained[i]` is the index in `points` holding input row `i`.
    pub retained: Vec<usize>,
    pub duplicates_removed: usize,
}

impl PointSet {
    /// Build a point set from row vectors, dropping exact duplicates.
    ///
    /// Fails if there are no rows, rows have inconsistent lengths, the
    /// dimension is zero, or any coordinate is non-finite.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Ingested> {
        if rows.is_empty() {
            return Err(Error::contract("point set must contain at least one point"));
        }
        let dim = rows[0].len();
        if dim == 0 {
            return Err(Error::contract("points must have dimension >= 1"));
        }
        let mut data = Vec::with_capacity(rows.len() * dim);
        let mut retained = Vec::with_capacity(rows.len());
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::with_capacity(rows.len());
        let mut count = 0usize;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::contract(format!(
                    "row {} has {} coordinates, expected {}",
                    i,
                    row.len(),
                    dim
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::contract(format!(
                        "non-finite coordinate {v} at row {i}, column {j}"
                    )));
                }
            }
            let key: Vec<u64> = row.iter().map(|&v| canonical_bits(v)).collect();
            match seen.entry(key) {
                std::collections::hash_map::Entry::Occupied(e) => retained.push(*e.get()),
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(count);
                    retained.push(count);
                    data.extend_from_slice(row);
                    count += 1;
                }
            }
        }
        let duplicates_removed = rows.len() - count;
        Ok(Ingested {
            points: PointSet { data, count, dim },
            retained,
            duplicates_removed,
        })
    }

    /// Convenience constructor for literal data; panics on invalid input or
    /// duplicates removed, so it is meant for tests and examples.
    pub fn from_slices(rows: &[&[f64]]) -> PointSet {
        let owned: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        let ingested = Self::from_rows(&owned).expect("valid literal point set");
        assert_eq!(
            ingested.duplicates_removed, 0,
            "literal rows must be unique"
        );
        ingested.points
    }

    /// Number of points `N`.
    pub fn count(&self) -> usize {
        self.count
    }

    /// Dimension `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of point `i`.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Borrowed rows for a subset of indices, in the order given.
    pub fn rows_for(&self, indices: &[usize]) -> Vec<&[f64]> {
        indices.iter().map(|&i| self.row(i)).collect()
    }

    /// Iterator over all rows.
    pub fn iter_rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    /// Diagonal length of the axis-aligned bounding box: an `O(Nn)`
    /// upper-bound proxy for the point-set diameter, used to scale
    /// tolerances so they are invariant under uniform rescaling.
    pub fn bbox_diagonal(&self) -> f64 {
        let mut lo = self.row(0).to_vec();
        let mut hi = self.row(0).to_vec();
        for row in self.iter_rows().skip(1) {
            for (j, &v) in row.iter().enumerate() {
                if v < lo[j] {
                    lo[j] = v;
                }
                if v > hi[j] {
                    hi[j] = v;
                }
            }
        }
        lo.iter()
            .zip(&hi)
            .map(|(a, b)| (b - a) * (b - a))
            .sum::<f64>()
            .sqrt()
    }
}

/// Bit pattern used for exact-duplicate detection; folds -0.0 into +0.0 so
/// numerically equal rows compare equal.
fn canonical_bits(v: f64) -> u64 {
    if v == 0.0 {
        0.0f64.to_bits()
    } else {
        v.to_bits()
    }
}
