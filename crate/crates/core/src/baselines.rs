//! Classical association measures, reported next to `k` for context.
//!
//! The matrix is treated as the population table, so no sample size enters.

use crate::error::{Error, Result};
use crate::matrix::OrientedMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineReport {
    /// `sum_ij (p_ij - s_i q_j)^2 / (s_i q_j)`.
    pub chi_square: f64,
    /// `sqrt(chi_square / (min(n, m) - 1))`, in `[0, 1]`.
    pub cramers_v: f64,
    /// `sum_{p_ij > 0} p_ij ln(p_ij / (s_i q_j))`, in nats.
    pub mutual_information: f64,
}

pub fn baselines(m: &OrientedMatrix) -> Result<BaselineReport> {
    let p = &m.matrix;
    let (rows, cols) = p.shape();
    if rows.min(cols) < 2 {
        return Err(Error::DegenerateDistribution { rows, cols });
    }
    // Population measures assume a probability table.
    let total = p.total();
    let marg = p.marginals();
    let sum = p.summation();

    let mut chi = sum.accumulator();
    let mut mi = sum.accumulator();
    for i in 0..rows {
        let s = marg.row_sums[i] / total;
        for j in 0..cols {
            let q = marg.col_sums[j] / total;
            let pij = p.get(i, j) / total;
            let expected = s * q;
            let diff = pij - expected;
            chi.add(diff * diff / expected);
            if pij > 0.0 {
                mi.add(pij * (pij / expected).ln());
            }
        }
    }
    let chi_square = chi.value();
    let cramers_v = (chi_square / (rows.min(cols) - 1) as f64).sqrt().min(1.0);
    Ok(BaselineReport {
        chi_square,
        cramers_v,
        mutual_information: mi.value().max(0.0),
    })
}
