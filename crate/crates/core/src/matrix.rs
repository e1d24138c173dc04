//! Validated joint matrices, marginals and orientation.

use crate::error::{Error, Result};
use crate::summation::Summation;

/// Default absolute tolerance on the total mass of a probability matrix.
pub const DEFAULT_EPS_NORM: f64 = 1e-9;

/// How raw entries should be interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputMode {
    /// Entries must already sum to one within `eps_norm`.
    Probabilities,
    /// Entries are frequencies; they are divided by their total.
    Counts,
}

/// A dense `rows x cols` nonnegative matrix, stored row-major.
///
/// Entries are either a joint probability table (`is_normalized()`) or an
/// arbitrary nonnegative matrix. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct JointMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    normalized: bool,
}

impl JointMatrix {
    /// Validates a grid of rows.
    pub fn validate(entries: &[Vec<f64>], mode: InputMode, eps_norm: f64) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if let Some(i) = entries.iter().position(|r| r.len() != cols) {
            return Err(Error::ShapeError {
                rows,
                cols: entries[i].len(),
                reason: "rows have different lengths",
            });
        }
        let data = entries.iter().flatten().copied().collect();
        Self::from_row_major(rows, cols, data, mode, eps_norm)
    }

    pub fn from_row_major(
        rows: usize,
        cols: usize,
        data: Vec<f64>,
        mode: InputMode,
        eps_norm: f64,
    ) -> Result<Self> {
        if !(eps_norm.is_finite() && eps_norm > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "eps_norm must be positive and finite, got {eps_norm}"
            )));
        }
        let raw = Self::nonnegative(rows, cols, data)?;
        let total = raw.total();
        match mode {
            InputMode::Counts => {
                let data = raw.data.iter().map(|v| v / total).collect();
                Ok(Self::from_trusted(rows, cols, data, true))
            }
            InputMode::Probabilities => {
                if (total - 1.0).abs() > eps_norm {
                    Err(Error::NotNormalized { sum: total })
                } else {
                    Ok(raw.with_normalized(true))
                }
            }
        }
    }

    /// Builds an unnormalized nonnegative matrix. The entries only have to be
    /// finite, nonnegative and not all zero.
    pub fn nonnegative(rows: usize, cols: usize, mut data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::ShapeError {
                rows,
                cols,
                reason: "entry count does not match shape",
            });
        }
        for (idx, v) in data.iter_mut().enumerate() {
            let (row, col) = (idx / cols, idx % cols);
            if !v.is_finite() {
                return Err(Error::NonFiniteEntry { row, col });
            }
            if *v < 0.0 {
                return Err(Error::NegativeEntry { row, col });
            }
            // fold -0.0 into +0.0
            *v += 0.0;
        }
        let m = Self {
            rows,
            cols,
            data,
            normalized: false,
        };
        if m.total() == 0.0 {
            return Err(Error::AllZero);
        }
        Ok(m)
    }

    /// Internal constructor for data already known to satisfy the invariants.
    pub(crate) fn from_trusted(rows: usize, cols: usize, data: Vec<f64>, normalized: bool) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|v| v.is_finite() && *v >= 0.0));
        Self {
            rows,
            cols,
            data,
            normalized,
        }
    }

    fn with_normalized(mut self, normalized: bool) -> Self {
        self.normalized = normalized;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.cols).map(<[f64]>::to_vec).collect()
    }

    pub(crate) fn summation(&self) -> Summation {
        Summation::for_shape(self.rows, self.cols)
    }

    /// Total mass in canonical row-major order.
    pub fn total(&self) -> f64 {
        self.summation().sum(self.data.iter().copied())
    }

    pub fn marginals(&self) -> Marginals {
        let sum = self.summation();
        let row_sums = (0..self.rows)
            .map(|i| sum.sum(self.row(i).iter().copied()))
            .collect();
        let col_sums = (0..self.cols)
            .map(|j| sum.sum((0..self.rows).map(|i| self.get(i, j))))
            .collect();
        Marginals { row_sums, col_sums }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            data.extend((0..self.rows).map(|i| self.get(i, j)));
        }
        Self::from_trusted(self.cols, self.rows, data, self.normalized)
    }

    /// Multiplies every entry by `factor`. The result is marked unnormalized
    /// unless the caller re-marks it.
    ///
    /// # Panics
    ///
    /// If `factor` is not positive and finite.
    pub fn scaled(&self, factor: f64) -> Self {
        assert!(factor.is_finite() && factor > 0.0, "scale factor must be positive");
        let data = self.data.iter().map(|v| v * factor).collect();
        Self::from_trusted(self.rows, self.cols, data, false)
    }

    /// Reorders rows and columns: entry `(i, j)` of the result is
    /// `self.get(row_order[i], col_order[j])`.
    pub fn permuted(&self, row_order: &[usize], col_order: &[usize]) -> Result<Self> {
        if !is_permutation(row_order, self.rows) || !is_permutation(col_order, self.cols) {
            return Err(Error::InvalidParameter(
                "row and column orders must be permutations".into(),
            ));
        }
        let data = row_order
            .iter()
            .flat_map(|&i| col_order.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        Ok(Self::from_trusted(self.rows, self.cols, data, self.normalized))
    }

    fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        Self::from_trusted(rows.len(), cols.len(), data, self.normalized)
    }
}

impl AsRef<JointMatrix> for JointMatrix {
    fn as_ref(&self) -> &JointMatrix {
        self
    }
}

impl AsRef<JointMatrix> for OrientedMatrix {
    fn as_ref(&self) -> &JointMatrix {
        &self.matrix
    }
}

fn is_permutation(order: &[usize], len: usize) -> bool {
    let mut seen = vec![false; len];
    order.len() == len
        && order
            .iter()
            .all(|&i| i < len && !std::mem::replace(&mut seen[i], true))
}

/// Row sums `s_i` and column sums `q_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Marginals {
    pub row_sums: Vec<f64>,
    pub col_sums: Vec<f64>,
}

/// Orientation policy for [`orient_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    /// Transpose when there are more rows than columns.
    #[default]
    Auto,
    /// Never transpose. The result may have more rows than columns.
    AsGiven,
}

/// A pruned matrix ready for the coefficient kernels: at least two rows, at
/// least two columns, no zero rows or columns, and (under
/// [`Orientation::Auto`]) no more rows than columns.
#[derive(Debug, Clone, PartialEq)]
pub struct OrientedMatrix {
    pub matrix: JointMatrix,
    pub transposed: bool,
    /// Original row indices that were removed for having zero mass.
    pub dropped_rows: Vec<usize>,
    /// Original column indices that were removed for having zero mass.
    pub dropped_cols: Vec<usize>,
}

impl OrientedMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    /// The same pruned matrix in the opposite orientation.
    pub fn flipped(&self) -> Self {
        Self {
            matrix: self.matrix.transpose(),
            transposed: !self.transposed,
            dropped_rows: self.dropped_rows.clone(),
            dropped_cols: self.dropped_cols.clone(),
        }
    }
}

/// Prunes zero rows and columns, then transposes if `rows > cols`.
pub fn orient(p: &JointMatrix) -> Result<OrientedMatrix> {
    orient_with(p, Orientation::Auto)
}

pub fn orient_with(p: &JointMatrix, policy: Orientation) -> Result<OrientedMatrix> {
    let (rows, cols) = p.shape();
    let (kept_rows, dropped_rows): (Vec<usize>, Vec<usize>) =
        (0..rows).partition(|&i| p.row(i).iter().any(|&v| v != 0.0));
    let (kept_cols, dropped_cols): (Vec<usize>, Vec<usize>) =
        (0..cols).partition(|&j| (0..rows).any(|i| p.get(i, j) != 0.0));

    if kept_rows.len() < 2 || kept_cols.len() < 2 {
        return Err(Error::DegenerateDistribution {
            rows: kept_rows.len(),
            cols: kept_cols.len(),
        });
    }

    let pruned = if dropped_rows.is_empty() && dropped_cols.is_empty() {
        p.clone()
    } else {
        p.select(&kept_rows, &kept_cols)
    };
    let transposed = policy == Orientation::Auto && pruned.rows() > pruned.cols();
    let matrix = if transposed { pruned.transpose() } else { pruned };
    Ok(OrientedMatrix {
        matrix,
        transposed,
        dropped_rows,
        dropped_cols,
    })
}
