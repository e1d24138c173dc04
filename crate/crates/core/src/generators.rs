//! Seeded synthetic matrices: independent (product), functional, mixtures of
//! the two, and i.i.d. random fill.
//!
//! Every generator is a pure function of its parameters and a `u64` seed.
//! The source is ChaCha8 seeded with [`SeedableRng::seed_from_u64`]; each
//! generator kind reads its own ChaCha stream, so a mixture with seed `s` is
//! built from exactly the product and functional matrices that seed `s`
//! produces on its own.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{InputMode, JointMatrix, DEFAULT_EPS_NORM};

const PRODUCT_STREAM: u64 = 1;
const FUNCTIONAL_STREAM: u64 = 2;
const RANDOM_STREAM: u64 = 3;

/// Deterministic random source for `(seed, stream)`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Product,
    Functional,
    Mixture,
    Random,
    RandomNonneg,
}

impl GeneratorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorKind::Product => "product",
            GeneratorKind::Functional => "functional",
            GeneratorKind::Mixture => "mixture",
            GeneratorKind::Random => "random",
            GeneratorKind::RandomNonneg => "random-nonneg",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "product" => GeneratorKind::Product,
            "functional" => GeneratorKind::Functional,
            "mixture" => GeneratorKind::Mixture,
            "random" => GeneratorKind::Random,
            "random-nonneg" | "random_nonneg" => GeneratorKind::RandomNonneg,
            other => {
                return Err(Error::InvalidParameter(format!("unknown generator kind {other:?}")))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub rows: usize,
    pub cols: usize,
    /// Weight of the functional component; only read by `Mixture`.
    pub lambda: f64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, rows: usize, cols: usize, seed: u64) -> Self {
        Self {
            kind,
            rows,
            cols,
            lambda: 0.0,
            seed,
        }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let (rows, cols) = (self.rows, self.cols);
        match self.kind {
            GeneratorKind::Product | GeneratorKind::Functional | GeneratorKind::Mixture => {
                if rows < 2 || rows > cols {
                    return Err(Error::ShapeError {
                        rows,
                        cols,
                        reason: "need 2 <= rows <= cols",
                    });
                }
            }
            GeneratorKind::Random | GeneratorKind::RandomNonneg => {
                if rows == 0 || cols == 0 {
                    return Err(Error::EmptyMatrix);
                }
            }
        }
        check_lambda(self.lambda)
    }

    pub fn generate(&self) -> Result<JointMatrix> {
        self.validate()?;
        let (n, m, seed) = (self.rows, self.cols, self.seed);
        match self.kind {
            GeneratorKind::Product => gen_product(n, m, seed),
            GeneratorKind::Functional => gen_functional(n, m, seed),
            GeneratorKind::Mixture => gen_mixture(n, m, self.lambda, seed),
            GeneratorKind::Random => gen_random(n, m, seed, false),
            GeneratorKind::RandomNonneg => gen_random(n, m, seed, true),
        }
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if (0.0..=1.0).contains(&lambda) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("lambda must lie in [0, 1], got {lambda}")))
    }
}

/// Lower end of the uniform draws behind product marginals and functional
/// masses. With at most 12 rows every normalized mass is then at least
/// `MASS_FLOOR / 12`, which keeps functional matrices a fixed distance from
/// the boundary: moving 1e-3 of mass into any empty cell lowers `k` by more
/// than 2e-6.
pub const MASS_FLOOR: f64 = 0.02;

/// `len` draws from `[MASS_FLOOR, 1)`, divided by their sum.
fn positive_simplex<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    let draws: Vec<f64> = (0..len).map(|_| rng.gen_range(MASS_FLOOR..1.0)).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|d| d / total).collect()
}

/// Outer product `p_i * q_j` of two probability vectors.
pub fn product_from_marginals(p: &[f64], q: &[f64]) -> Result<JointMatrix> {
    let data = p.iter().flat_map(|a| q.iter().map(move |b| a * b)).collect();
    JointMatrix::from_row_major(p.len(), q.len(), data, InputMode::Probabilities, DEFAULT_EPS_NORM)
}

/// Mass `masses[i]` at `(i, columns[i])`, zero elsewhere.
pub fn functional_from_parts(cols: usize, masses: &[f64], columns: &[usize]) -> Result<JointMatrix> {
    let rows = masses.len();
    if rows > cols {
        return Err(Error::ShapeError {
            rows,
            cols,
            reason: "functional matrices need rows <= cols",
        });
    }
    let mut seen = vec![false; cols];
    if columns.len() != rows
        || columns
            .iter()
            .any(|&c| c >= cols || std::mem::replace(&mut seen[c], true))
    {
        return Err(Error::InvalidParameter(
            "columns must be distinct, in range, and one per row".into(),
        ));
    }
    let mut data = vec![0.0; rows * cols];
    for (i, (&mass, &col)) in masses.iter().zip(columns).enumerate() {
        data[i * cols + col] = mass;
    }
    JointMatrix::from_row_major(rows, cols, data, InputMode::Probabilities, DEFAULT_EPS_NORM)
}

/// A rank-one joint distribution with random strictly positive marginals.
pub fn gen_product(n: usize, m: usize, seed: u64) -> Result<JointMatrix> {
    if n < 2 || m < 2 {
        return Err(Error::ShapeError {
            rows: n,
            cols: m,
            reason: "product matrices need at least 2 rows and 2 columns",
        });
    }
    let mut rng = rng_for(seed, PRODUCT_STREAM);
    let p = positive_simplex(&mut rng, n);
    let q = positive_simplex(&mut rng, m);
    let data = p.iter().flat_map(|a| q.iter().map(move |b| a * b)).collect();
    Ok(JointMatrix::from_trusted(n, m, data, true))
}

/// A functional joint distribution: row `i` carries all of its mass in column
/// `k_i`, with `k_1..k_n` a random injection into the columns.
pub fn gen_functional(n: usize, m: usize, seed: u64) -> Result<JointMatrix> {
    if n < 2 || n > m {
        return Err(Error::ShapeError {
            rows: n,
            cols: m,
            reason: "need 2 <= rows <= cols",
        });
    }
    let mut rng = rng_for(seed, FUNCTIONAL_STREAM);
    let masses = positive_simplex(&mut rng, n);
    let columns = index::sample(&mut rng, m, n).into_vec();
    let mut data = vec![0.0; n * m];
    for (i, (&mass, &col)) in masses.iter().zip(&columns).enumerate() {
        data[i * m + col] = mass;
    }
    Ok(JointMatrix::from_trusted(n, m, data, true))
}

/// `(1 - lambda) * gen_product + lambda * gen_functional`, entrywise.
pub fn gen_mixture(n: usize, m: usize, lambda: f64, seed: u64) -> Result<JointMatrix> {
    check_lambda(lambda)?;
    let product = gen_product(n, m, seed)?;
    let functional = gen_functional(n, m, seed)?;
    let data = product
        .as_slice()
        .iter()
        .zip(functional.as_slice())
        .map(|(a, b)| (1.0 - lambda) * a + lambda * b)
        .collect();
    Ok(JointMatrix::from_trusted(n, m, data, true))
}

/// I.i.d. uniform entries in `(0, 1]`, divided by their total unless
/// `nonneg_unnormalized` is set.
pub fn gen_random(n: usize, m: usize, seed: u64, nonneg_unnormalized: bool) -> Result<JointMatrix> {
    if n == 0 || m == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut rng = rng_for(seed, RANDOM_STREAM);
    let draws: Vec<f64> = (0..n * m).map(|_| 1.0 - rng.gen::<f64>()).collect();
    if nonneg_unnormalized {
        return Ok(JointMatrix::from_trusted(n, m, draws, false));
    }
    let total: f64 = draws.iter().sum();
    let data = draws.into_iter().map(|d| d / total).collect();
    Ok(JointMatrix::from_trusted(n, m, data, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficient::{coefficient, is_functional_structure, mu_naive, Algorithm, Thresholds};
    use crate::matrix::orient;

    fn k_of(p: &JointMatrix) -> f64 {
        coefficient(&orient(p).unwrap(), Algorithm::Naive, &Thresholds::default())
            .unwrap()
            .k
    }

    #[test]
    fn outer_product_examples() {
        let p = product_from_marginals(&[0.5, 0.5], &[0.5, 0.5]).unwrap();
        assert_eq!(p.to_rows(), vec![vec![0.25; 2]; 2]);

        let p = product_from_marginals(&[0.3, 0.7], &[0.4, 0.6]).unwrap();
        let expected = [[0.12, 0.18], [0.28, 0.42]];
        for (i, row) in expected.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                assert!((p.get(i, j) - e).abs() < 1e-16);
            }
        }
        assert!(product_from_marginals(&[0.5, 0.6], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn functional_examples() {
        let p = functional_from_parts(2, &[0.5, 0.5], &[0, 1]).unwrap();
        assert_eq!(p.to_rows(), vec![vec![0.5, 0.0], vec![0.0, 0.5]]);
        let p = functional_from_parts(3, &[0.2, 0.8], &[2, 0]).unwrap();
        assert_eq!(p.to_rows(), vec![vec![0.0, 0.0, 0.2], vec![0.8, 0.0, 0.0]]);
        assert!(matches!(
            functional_from_parts(1, &[0.5, 0.5], &[0, 0]),
            Err(Error::ShapeError { .. })
        ));
        assert!(functional_from_parts(3, &[0.5, 0.5], &[1, 1]).is_err());
        assert!(matches!(gen_functional(3, 2, 0), Err(Error::ShapeError { .. })));
    }

    #[test]
    fn product_output_has_vanishing_minors() {
        for seed in 0..20 {
            let p = gen_product(3, 5, seed).unwrap();
            assert!(p.is_normalized());
            assert!((p.total() - 1.0).abs() < 1e-12);
            assert!(mu_naive(&p) <= 1e-24);
        }
    }

    #[test]
    fn functional_output_reaches_one() {
        for seed in 0..20 {
            let p = gen_functional(3, 7, seed).unwrap();
            assert!(is_functional_structure(&p, 0.0));
            assert!((k_of(&p) - 1.0).abs() <= 1e-12);
            assert!(p.as_slice().iter().all(|&v| v >= 0.0));
            assert_eq!(p.as_slice().iter().filter(|&&v| v > 0.0).count(), 3);
        }
    }

    #[test]
    fn mixture_endpoints() {
        let seed = 42;
        assert!(k_of(&gen_mixture(2, 2, 0.0, seed).unwrap()) <= 1e-12);
        assert!((k_of(&gen_mixture(2, 2, 1.0, seed).unwrap()) - 1.0).abs() <= 1e-12);
        assert_eq!(gen_mixture(3, 4, 0.0, seed).unwrap(), gen_product(3, 4, seed).unwrap());
        assert_eq!(
            gen_mixture(3, 4, 1.0, seed).unwrap().as_slice(),
            gen_functional(3, 4, seed).unwrap().as_slice()
        );
        let half = k_of(&gen_mixture(2, 2, 0.5, seed).unwrap());
        assert!(half > 0.0 && half < 1.0, "k = {half}");
        assert!(gen_mixture(2, 2, 1.5, seed).is_err());
    }

    #[test]
    fn random_output_is_valid_and_deterministic() {
        let a = gen_random(4, 6, 7, false).unwrap();
        let b = gen_random(4, 6, 7, false).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, gen_random(4, 6, 8, false).unwrap());
        let revalidated =
            JointMatrix::validate(&a.to_rows(), InputMode::Probabilities, DEFAULT_EPS_NORM).unwrap();
        assert_eq!(revalidated, a);

        let raw = gen_random(4, 6, 7, true).unwrap();
        assert!(!raw.is_normalized());
        assert!(raw.as_slice().iter().all(|&v| v > 0.0 && v <= 1.0));
    }

    #[test]
    fn spec_dispatch_and_validation() {
        let spec = GeneratorSpec::new(GeneratorKind::Mixture, 3, 5, 9).with_lambda(0.25);
        assert_eq!(spec.generate().unwrap(), gen_mixture(3, 5, 0.25, 9).unwrap());
        assert!(GeneratorSpec::new(GeneratorKind::Product, 5, 3, 0).generate().is_err());
        assert!(GeneratorSpec::new(GeneratorKind::Random, 5, 3, 0).generate().is_ok());
        assert!(GeneratorSpec::new(GeneratorKind::RandomNonneg, 0, 3, 0).generate().is_err());
        assert_eq!("random-nonneg".parse::<GeneratorKind>().unwrap(), GeneratorKind::RandomNonneg);
        assert!("dirichlet".parse::<GeneratorKind>().is_err());
    }
}
