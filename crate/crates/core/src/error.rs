use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("negative entry at row {row}, column {col}")]
    NegativeEntry { row: usize, col: usize },

    #[error("non-finite entry at row {row}, column {col}")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("probabilities sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },

    #[error("matrix has zero total mass")]
    AllZero,

    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    /// Fewer than two nonzero rows or columns survive pruning, so no 2x2
    /// minor exists and the functional bound is an empty sum.
    #[error("degenerate distribution: {rows}x{cols} after removing zero rows and columns")]
    DegenerateDistribution { rows: usize, cols: usize },

    /// `k` exceeded `1 + 1e-12` or could not be formed. This is never a data
    /// condition.
    #[error("bound violation: k = {k}")]
    BoundViolation { k: f64 },

    #[error("naive and fast kernels disagree: naive mu = {naive}, fast mu = {fast}")]
    KernelMismatch { naive: f64, fast: f64 },

    #[error("invalid shape {rows}x{cols}: {reason}")]
    ShapeError {
        rows: usize,
        cols: usize,
        reason: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no samples in input")]
    EmptyInput,

    #[error("parse error at line {line}{}", col.map(|c| format!(", column {c}")).unwrap_or_default())]
    Parse { line: usize, col: Option<usize> },

    #[error("row at line {line} has a different length than the first row")]
    RaggedRows { line: usize },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// Process exit code: 2 for internal numerical failures, 1 for anything
    /// caused by the input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BoundViolation { .. } | Error::KernelMismatch { .. } => 2,
            _ => 1,
        }
    }
}
