//! Contingency tables from paired categorical observations.

use indexmap::{IndexMap, IndexSet};

use crate::error::{Error, Result};
use crate::matrix::JointMatrix;

/// Observed `(x, y)` label pairs together with both alphabets in order of
/// first appearance.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SamplePairs {
    pairs: Vec<(String, String)>,
    x_alphabet: IndexSet<String>,
    y_alphabet: IndexSet<String>,
}

impl SamplePairs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: impl Into<String>, y: impl Into<String>) {
        let (x, y) = (x.into(), y.into());
        self.x_alphabet.insert(x.clone());
        self.y_alphabet.insert(y.clone());
        self.pairs.push((x, y));
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn x_alphabet(&self) -> impl Iterator<Item = &str> {
        self.x_alphabet.iter().map(String::as_str)
    }

    pub fn y_alphabet(&self) -> impl Iterator<Item = &str> {
        self.y_alphabet.iter().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl<X: Into<String>, Y: Into<String>> FromIterator<(X, Y)> for SamplePairs {
    fn from_iter<I: IntoIterator<Item = (X, Y)>>(iter: I) -> Self {
        let mut s = Self::new();
        for (x, y) in iter {
            s.push(x, y);
        }
        s
    }
}

/// Label-to-index maps in first-appearance order.
pub fn encode_labels(samples: &SamplePairs) -> (IndexMap<String, usize>, IndexMap<String, usize>) {
    let index = |alphabet: &IndexSet<String>| {
        alphabet
            .iter()
            .enumerate()
            .map(|(i, label)| (label.clone(), i))
            .collect()
    };
    (index(&samples.x_alphabet), index(&samples.y_alphabet))
}

/// Raw co-occurrence counts, `|x_alphabet| x |y_alphabet|`, row-major.
pub fn count_table(samples: &SamplePairs) -> Result<(usize, usize, Vec<u64>)> {
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    let rows = samples.x_alphabet.len();
    let cols = samples.y_alphabet.len();
    let mut counts = vec![0u64; rows * cols];
    for (x, y) in &samples.pairs {
        let i = samples.x_alphabet.get_index_of(x).expect("x label in alphabet");
        let j = samples.y_alphabet.get_index_of(y).expect("y label in alphabet");
        counts[i * cols + j] += 1;
    }
    Ok((rows, cols, counts))
}

/// Empirical joint distribution: counts divided by the number of pairs.
pub fn tabulate(samples: &SamplePairs) -> Result<JointMatrix> {
    let (rows, cols, counts) = count_table(samples)?;
    let total = samples.len() as f64;
    let data = counts.iter().map(|&c| c as f64 / total).collect();
    Ok(JointMatrix::from_trusted(rows, cols, data, true))
}
