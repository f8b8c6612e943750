use crate::projection::Projection;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller broke a documented precondition (empty input, dimension
    /// mismatch, invalid configuration value, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// The projection solver hit its iteration cap before the optimality
    /// certificate was satisfied. Carries the best iterate found and the
    /// residual gap so callers can inspect how far off it was.
    #[error(
        "projection solver did not converge after {iterations} iterations \
         (optimality gap {gap:.3e}, tolerance {tolerance:.3e})"
    )]
    Convergence {
        iterations: usize,
        gap: f64,
        tolerance: f64,
        best: Box<Projection>,
    },

    /// Malformed input data. `row` and `column` are 1-based positions in the
    /// source file where available.
    #[error("parse error at row {row}{}: {message}", column.map(|c| format!(", column {c}")).unwrap_or_default())]
    Parse {
        row: usize,
        column: Option<usize>,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    /// Process exit code for this error: 2 for input/contract problems,
    /// 3 for solver non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Convergence { .. } => 3,
            _ => 2,
        }
    }
}
