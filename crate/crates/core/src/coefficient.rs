//! The dependence coefficient `k = mu / mu_f`.
//!
//! `mu` is the sum of squares of every 2x2 minor of the matrix and `mu_f` is
//! `sum_{i<j} s_i^2 s_j^2` over the row sums. `k` is 0 exactly when the matrix
//! has rank one (independence) and 1 exactly when each row has a single
//! nonzero entry in pairwise distinct columns (functional dependence).
//!
//! Two routes compute `mu`:
//!
//! * [`mu_naive`] enumerates all `C(n,2) * C(m,2)` minors. It is the oracle.
//! * [`mu_fast`] uses the row-pair identity
//!   `|a|^2 |b|^2 - (a.b)^2 = sum_{k<l} (a_k b_l - a_l b_k)^2`
//!   on the Gram matrix `G = P P^T`, for `O(n^2 m)` total work.
//!
//! Both routes are accurate relative to `mu` itself, including for rank-one
//! matrices whose minors are pure rounding noise. Minors are formed with a
//! fused multiply-add difference of products; in the fast kernel, row pairs
//! whose Gram term would lose too many digits to cancellation are recomputed
//! by projecting one row off the other.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{JointMatrix, OrientedMatrix};
use crate::summation::Summation;

/// Default classification thresholds.
pub const DEFAULT_TAU_INDEP: f64 = 1e-10;
pub const DEFAULT_TAU_FUNC: f64 = 1e-10;

/// Rounding overshoot of `k` above 1 that is clamped instead of reported.
pub const BOUND_SLACK: f64 = 1e-12;

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Per-pair relative accuracy the fast kernel must guarantee before it keeps
/// the plain Gram term.
const PAIR_TOLERANCE: f64 = 1e-13;

const MAX_PROJECTIONS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algorithm {
    Naive,
    #[default]
    Fast,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Fast => "fast",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Independent,
    Functional,
    Intermediate,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Independent => "independent",
            Classification::Functional => "functional",
            Classification::Intermediate => "intermediate",
        }
    }
}

/// Tolerances used to turn `k` into a [`Classification`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub tau_indep: f64,
    pub tau_func: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            tau_indep: DEFAULT_TAU_INDEP,
            tau_func: DEFAULT_TAU_FUNC,
        }
    }
}

impl Thresholds {
    pub fn new(tau_indep: f64, tau_func: f64) -> Result<Self> {
        for (name, v) in [("tau_indep", tau_indep), ("tau_func", tau_func)] {
            if !(v.is_finite() && v > 0.0 && v < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must lie in (0, 1), got {v}"
                )));
            }
        }
        Ok(Self {
            tau_indep,
            tau_func,
        })
    }

    pub fn classify(&self, k: f64) -> Classification {
        if k <= self.tau_indep {
            Classification::Independent
        } else if k >= 1.0 - self.tau_func {
            Classification::Functional
        } else {
            Classification::Intermediate
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DependenceReport {
    pub mu: f64,
    pub mu_f: f64,
    pub k: f64,
    pub n_effective: usize,
    pub m_effective: usize,
    pub transposed: bool,
    pub classification: Classification,
    pub algorithm: Algorithm,
}

/// `a*d - b*c` with one rounding error relative to the exact result.
#[inline]
fn diff_of_products(a: f64, d: f64, b: f64, c: f64) -> f64 {
    let w = b * c;
    let err = (-b).mul_add(c, w);
    a.mul_add(d, -w) + err
}

/// Sum of squared 2x2 minors by direct enumeration, in lexicographic order of
/// `(i, j, k, l)` with `i < j`, `k < l`.
pub fn mu_naive<M: AsRef<JointMatrix> + ?Sized>(m: &M) -> f64 {
    let p = m.as_ref();
    let (rows, cols) = p.shape();
    let mut acc = p.summation().accumulator();
    for i in 0..rows {
        let a = p.row(i);
        for j in i + 1..rows {
            let b = p.row(j);
            for k in 0..cols {
                for l in k + 1..cols {
                    let minor = diff_of_products(a[k], b[l], a[l], b[k]);
                    acc.add(minor * minor);
                }
            }
        }
    }
    acc.value()
}

/// Sum of squared 2x2 minors through the Gram matrix of the rows.
pub fn mu_fast<M: AsRef<JointMatrix> + ?Sized>(m: &M) -> f64 {
    let p = m.as_ref();
    let kernel = GramKernel::new(p);
    let mut acc = kernel.sum.accumulator();
    let mut scratch = vec![0.0; p.cols()];
    for i in 0..p.rows() {
        for j in i + 1..p.rows() {
            acc.add(kernel.pair_term(i, j, &mut scratch));
        }
    }
    acc.value()
}

/// [`mu_fast`] with row pairs partitioned by first row across the rayon
/// pool. Partial sums are combined in row order, so the result does not
/// depend on the thread count, but it may differ from [`mu_fast`] in the
/// last bits.
pub fn mu_fast_parallel<M: AsRef<JointMatrix> + ?Sized>(m: &M) -> f64 {
    let p = m.as_ref();
    let kernel = GramKernel::new(p);
    let partials: Vec<f64> = (0..p.rows())
        .into_par_iter()
        .map_init(
            || vec![0.0; p.cols()],
            |scratch, i| {
                let mut acc = kernel.sum.accumulator();
                for j in i + 1..p.rows() {
                    acc.add(kernel.pair_term(i, j, scratch));
                }
                acc.value()
            },
        )
        .collect();
    kernel.sum.sum(partials)
}

struct GramKernel<'a> {
    p: &'a JointMatrix,
    sum: Summation,
    /// Row-major `n x n`; only the upper triangle (with diagonal) is filled.
    gram: Vec<f64>,
    /// Bound on the relative error of each Gram entry.
    gram_rel_err: f64,
}

impl<'a> GramKernel<'a> {
    fn new(p: &'a JointMatrix) -> Self {
        let (rows, cols) = p.shape();
        let sum = p.summation();
        let mut gram = vec![0.0; rows * rows];
        for i in 0..rows {
            for j in i..rows {
                gram[i * rows + j] = sum.dot(p.row(i), p.row(j));
            }
        }
        // Zero columns add exact zeros to every dot product, so only the
        // occupied ones count toward the rounding bound.
        let occupied = (0..cols)
            .filter(|&k| (0..rows).any(|i| p.get(i, k) != 0.0))
            .count();
        let gram_rel_err = match sum {
            Summation::Plain => {
                let mu = occupied as f64 * UNIT_ROUNDOFF;
                mu / (1.0 - mu)
            }
            Summation::Compensated => 3.0 * UNIT_ROUNDOFF,
        };
        Self {
            p,
            sum,
            gram,
            gram_rel_err,
        }
    }

    fn pair_term(&self, i: usize, j: usize, scratch: &mut [f64]) -> f64 {
        let n = self.p.rows();
        let gii = self.gram[i * n + i];
        let gjj = self.gram[j * n + j];
        let gij = self.gram[i * n + j];
        let term = diff_of_products(gii, gjj, gij, gij);
        // Perturbing each Gram entry by its relative error bound moves the
        // term by at most this much (gij^2 <= gii*gjj for nonnegative rows).
        let bound = 4.0 * (self.gram_rel_err + UNIT_ROUNDOFF) * gii * gjj;
        if term > 0.0 && bound <= PAIR_TOLERANCE * term {
            term
        } else {
            self.projected_term(i, j, scratch)
        }
    }

    /// `|a|^2 * |b - t a|^2_perp` where `b - t a` is refined until it is
    /// orthogonal to `a` to working precision. Each residual component is
    /// formed with a single rounding, so the result stays accurate when `b`
    /// is nearly parallel to `a`.
    fn projected_term(&self, i: usize, j: usize, residual: &mut [f64]) -> f64 {
        let a = self.p.row(i);
        let n = self.p.rows();
        let aa = self.gram[i * n + i];
        residual.copy_from_slice(self.p.row(j));
        let mut ar = self.gram[i * n + j];
        let mut rr = self.gram[j * n + j];
        for _ in 0..MAX_PROJECTIONS {
            if ar * ar <= 1e-24 * aa * rr || rr == 0.0 {
                break;
            }
            let t = ar / aa;
            for (r, &x) in residual.iter_mut().zip(a) {
                *r = (-t).mul_add(x, *r);
            }
            ar = self.sum.dot(a, residual);
            rr = self.sum.dot(residual, residual);
        }
        diff_of_products(aa, rr, ar, ar).max(0.0)
    }
}

/// `sum_{i<j} s_i^2 s_j^2` over the row sums.
pub fn mu_f<M: AsRef<JointMatrix> + ?Sized>(m: &M) -> f64 {
    let p = m.as_ref();
    mu_f_from_row_sums(&p.marginals().row_sums, p.summation())
}

/// Evaluated as `sum_j s_j^2 * (sum_{i<j} s_i^2)`: every term is
/// nonnegative, so there is no cancellation even for very uneven row sums.
pub fn mu_f_from_row_sums(row_sums: &[f64], sum: Summation) -> f64 {
    let mut prefix = sum.accumulator();
    let mut total = sum.accumulator();
    for &s in row_sums {
        let sq = s * s;
        total.add(sq * prefix.value());
        prefix.add(sq);
    }
    total.value()
}

pub fn mu<M: AsRef<JointMatrix> + ?Sized>(m: &M, algorithm: Algorithm) -> f64 {
    match algorithm {
        Algorithm::Naive => mu_naive(m),
        Algorithm::Fast => mu_fast(m),
    }
}

/// Computes `k` for an oriented matrix and classifies it.
///
/// Returns [`Error::BoundViolation`] if `k` exceeds `1 + BOUND_SLACK` or is
/// not finite (which happens only when `mu_f` underflows).
pub fn coefficient(
    m: &OrientedMatrix,
    algorithm: Algorithm,
    thresholds: &Thresholds,
) -> Result<DependenceReport> {
    let mu = mu(m, algorithm);
    let mu_f = mu_f(m);
    let k = checked_ratio(mu, mu_f)?;
    Ok(DependenceReport {
        mu,
        mu_f,
        k,
        n_effective: m.rows(),
        m_effective: m.cols(),
        transposed: m.transposed,
        classification: thresholds.classify(k),
        algorithm,
    })
}

fn checked_ratio(mu: f64, mu_f: f64) -> Result<f64> {
    let k = mu / mu_f;
    if !(0.0..=1.0 + BOUND_SLACK).contains(&k) {
        return Err(Error::BoundViolation { k });
    }
    Ok(k.min(1.0))
}

/// True iff every row has exactly one entry above `eps` and those entries
/// sit in pairwise distinct columns.
pub fn is_functional_structure<M: AsRef<JointMatrix> + ?Sized>(m: &M, eps: f64) -> bool {
    let p = m.as_ref();
    let mut used = vec![false; p.cols()];
    (0..p.rows()).all(|i| {
        let mut hits = p.row(i).iter().enumerate().filter(|(_, &v)| v > eps);
        match (hits.next(), hits.next()) {
            (Some((col, _)), None) => !std::mem::replace(&mut used[col], true),
            _ => false,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{orient, InputMode, DEFAULT_EPS_NORM};

    fn oriented(rows: &[&[f64]]) -> OrientedMatrix {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        let p = JointMatrix::validate(&rows, InputMode::Probabilities, DEFAULT_EPS_NORM).unwrap();
        orient(&p).unwrap()
    }

    fn close(actual: f64, expected: f64, rel: f64) -> bool {
        (actual - expected).abs() <= rel * expected.abs()
    }

    // Expected values below were computed in exact rational arithmetic by
    // enumerating every minor; the float inputs differ from the decimals by
    // one rounding, hence the 1e-14 tolerance.

    #[test]
    fn worked_two_by_two() {
        let m = oriented(&[&[0.4, 0.1], &[0.2, 0.3]]);
        assert!(close(mu_naive(&m), 0.01, 1e-14));
        assert!(close(mu_fast(&m), 0.01, 1e-14));
        assert!(close(mu_f(&m), 0.0625, 1e-14));
        let r = coefficient(&m, Algorithm::Fast, &Thresholds::default()).unwrap();
        assert!(close(r.k, 0.16, 1e-14));
        assert_eq!(r.classification, Classification::Intermediate);
        assert_eq!((r.n_effective, r.m_effective), (2, 2));
    }

    #[test]
    fn worked_two_by_three() {
        let m = oriented(&[&[0.2, 0.1, 0.1], &[0.1, 0.3, 0.2]]);
        assert!(close(mu_naive(&m), 0.0035, 1e-14));
        assert!(close(mu_fast(&m), 0.0035, 1e-14));
        assert!(close(mu_f(&m), 0.0576, 1e-14));
        let r = coefficient(&m, Algorithm::Naive, &Thresholds::default()).unwrap();
        assert!(close(r.k, 0.0035 / 0.0576, 1e-14));
        assert!(close(r.k, 0.060763888888888888, 1e-14));
        assert_eq!(r.classification, Classification::Intermediate);
        assert_eq!(r.algorithm, Algorithm::Naive);
    }

    #[test]
    fn mu_f_examples() {
        let s = Summation::Plain;
        assert!(close(mu_f_from_row_sums(&[0.5, 0.5], s), 0.0625, 1e-15));
        assert!(close(mu_f_from_row_sums(&[0.4, 0.6], s), 0.0576, 1e-15));
        assert!(close(mu_f_from_row_sums(&[0.2, 0.3, 0.5], s), 0.0361, 1e-15));
        assert_eq!(mu_f_from_row_sums(&[1.0], s), 0.0);
    }

    #[test]
    fn mu_f_survives_skewed_row_sums() {
        // (sum s^2)^2 - sum s^4 cancels badly here; the prefix form does not.
        let s = [1.0 - 1e-6, 1e-6];
        let exact = s[0] * s[0] * s[1] * s[1];
        assert!(close(mu_f_from_row_sums(&s, Summation::Plain), exact, 1e-15));
    }

    #[test]
    fn rank_one_matrices_have_zero_mu() {
        let m = oriented(&[&[0.25, 0.25], &[0.25, 0.25]]);
        assert_eq!(mu_naive(&m), 0.0);
        assert_eq!(mu_fast(&m), 0.0);
        let r = coefficient(&m, Algorithm::Fast, &Thresholds::default()).unwrap();
        assert_eq!(r.k, 0.0);
        assert_eq!(r.classification, Classification::Independent);

        // exactly representable outer product
        let m = oriented(&[&[0.125, 0.375], &[0.125, 0.375]]);
        assert_eq!(mu_naive(&m), 0.0);
        assert_eq!(mu_fast(&m), 0.0);
    }

    #[test]
    fn rounded_outer_product_agrees_across_kernels() {
        let p = [0.3, 0.7];
        let q = [0.1, 0.25, 0.65];
        let rows: Vec<Vec<f64>> = p.iter().map(|a| q.iter().map(|b| a * b).collect()).collect();
        let m = orient(&JointMatrix::nonnegative(2, 3, rows.concat()).unwrap()).unwrap();
        let naive = mu_naive(&m);
        let fast = mu_fast(&m);
        assert!(naive <= 1e-24);
        assert!((naive - fast).abs() <= 1e-12 * naive.max(1e-300), "{naive} vs {fast}");
    }

    #[test]
    fn functional_matrix_reaches_one() {
        let m = oriented(&[&[0.5, 0.0], &[0.0, 0.5]]);
        let r = coefficient(&m, Algorithm::Fast, &Thresholds::default()).unwrap();
        assert_eq!(r.k, 1.0);
        assert_eq!(r.classification, Classification::Functional);
        assert!(is_functional_structure(&m, 0.0));
    }

    #[test]
    fn functional_structure_examples() {
        let p = JointMatrix::nonnegative(2, 2, vec![0.5, 0.0, 0.5, 0.0]).unwrap();
        assert!(!is_functional_structure(&p, 0.0));
        let p = JointMatrix::nonnegative(2, 2, vec![0.4, 0.1, 0.0, 0.5]).unwrap();
        assert!(!is_functional_structure(&p, 0.0));
        assert!(is_functional_structure(&p, 0.2));
        let p = JointMatrix::nonnegative(2, 3, vec![0.0, 0.0, 0.2, 0.8, 0.0, 0.0]).unwrap();
        assert!(is_functional_structure(&p, 0.0));
        let p = JointMatrix::nonnegative(2, 2, vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(!is_functional_structure(&p, 0.0));
    }

    #[test]
    fn thresholds_classify_boundaries() {
        let t = Thresholds::default();
        assert_eq!(t.classify(0.0), Classification::Independent);
        assert_eq!(t.classify(1e-10), Classification::Independent);
        assert_eq!(t.classify(2e-10), Classification::Intermediate);
        assert_eq!(t.classify(1.0 - 1e-10), Classification::Functional);
        assert_eq!(t.classify(1.0), Classification::Functional);
        assert!(Thresholds::new(0.0, 0.1).is_err());
        assert!(Thresholds::new(0.1, f64::NAN).is_err());
        assert!(Thresholds::new(1e-3, 1e-3).is_ok());
    }

    #[test]
    fn overshoot_is_clamped_or_rejected() {
        assert_eq!(checked_ratio(1.0 + 5e-13, 1.0).unwrap(), 1.0);
        assert!(matches!(
            checked_ratio(1.0 + 1e-9, 1.0),
            Err(Error::BoundViolation { .. })
        ));
        assert!(matches!(checked_ratio(0.0, 0.0), Err(Error::BoundViolation { .. })));
    }

    #[test]
    fn underflowing_bound_is_an_internal_error() {
        let m = oriented(&[&[1.0, 0.0], &[0.0, 1e-170]]);
        assert_eq!(mu_f(&m), 0.0);
        assert!(matches!(
            coefficient(&m, Algorithm::Fast, &Thresholds::default()),
            Err(Error::BoundViolation { .. })
        ));
    }

    #[test]
    fn diff_of_products_is_exact_on_cancelling_inputs() {
        let a = 0.1;
        let b = 0.3;
        // a*b - b*a is exactly zero
        assert_eq!(diff_of_products(a, b, b, a), 0.0);
        // 3 * (1/3) - 1 is the rounding error of 1/3, not 0
        let third = 1.0 / 3.0;
        assert_eq!(diff_of_products(3.0, third, 1.0, 1.0), -(2f64.powi(-54)));
    }

    #[test]
    fn parallel_matches_sequential() {
        let rows: Vec<f64> = (0..20 * 30).map(|x| ((x * 7919) % 101) as f64 + 1.0).collect();
        let p = JointMatrix::nonnegative(20, 30, rows).unwrap();
        let seq = mu_fast(&p);
        let par = mu_fast_parallel(&p);
        assert!((seq - par).abs() <= 1e-12 * seq);
        assert!((seq - mu_naive(&p)).abs() <= 1e-12 * seq);
    }
}
