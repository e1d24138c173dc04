//! Degree of dependence between two discrete random variables.
//!
//! Given a joint probability matrix `P` (`n x m`, nonnegative, summing to
//! one) this crate computes
//!
//! ```text
//! k = mu / mu_f
//! mu   = sum of squares of all 2x2 minors of P
//! mu_f = sum_{i<j} s_i^2 s_j^2,   s_i = sum_k p_ik
//! ```
//!
//! after pruning zero rows/columns and transposing so that `n <= m`.
//! `k` lies in `[0, 1]`; it is 0 exactly for independent variables
//! (`p_ij = p_i q_j`) and 1 exactly for functional dependence (each row has a
//! single nonzero entry, all in distinct columns).
//!
//! ```
//! use depcoef::{dependence, InputMode, JointMatrix};
//!
//! let p = JointMatrix::validate(
//!     &[vec![0.4, 0.1], vec![0.2, 0.3]],
//!     InputMode::Probabilities,
//!     1e-9,
//! )?;
//! let report = dependence(&p)?;
//! assert!((report.k - 0.16).abs() < 1e-14);
//! # Ok::<(), depcoef::Error>(())
//! ```
//!
//! Modules:
//!
//! * [`matrix`]: validation, marginals, zero pruning and orientation.
//! * [`coefficient`]: the naive and Gram-matrix kernels for `mu`, `mu_f`, `k`.
//! * [`estimation`]: contingency tables from paired categorical samples.
//! * [`generators`]: seeded product, functional, mixture and random matrices.
//! * [`baselines`]: chi-square, Cramér's V and mutual information.
//! * [`io`] and [`cli`]: file formats, JSON reports and the `depcoef` command.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod baselines;
pub mod cli;
pub mod coefficient;
pub mod error;
pub mod estimation;
pub mod generators;
pub mod io;
pub mod matrix;
pub mod report;
pub mod summation;

pub use baselines::{baselines, BaselineReport};
pub use coefficient::{
    coefficient, is_functional_structure, mu_f, mu_fast, mu_fast_parallel, mu_naive, Algorithm,
    Classification, DependenceReport, Thresholds,
};
pub use error::{Error, Result};
pub use estimation::{encode_labels, tabulate, SamplePairs};
pub use generators::{GeneratorKind, GeneratorSpec};
pub use matrix::{orient, orient_with, InputMode, JointMatrix, Marginals, OrientedMatrix, Orientation};

/// Orients `p` and computes its coefficient with the fast kernel and default
/// thresholds.
pub fn dependence(p: &JointMatrix) -> Result<DependenceReport> {
    let oriented = orient(p)?;
    coefficient(&oriented, Algorithm::Fast, &Thresholds::default())
}
