//! Sequential accumulation with an optional Neumaier compensation term.
//!
//! Every reduction in the crate runs in a fixed index order. Large inputs
//! (more than [`COMPENSATION_THRESHOLD`] cells) switch to compensated
//! summation; the order stays the same, so results are reproducible bit for
//! bit on a given platform.

/// Cell count above which reductions are compensated.
pub const COMPENSATION_THRESHOLD: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summation {
    Plain,
    Compensated,
}

impl Summation {
    pub fn for_shape(rows: usize, cols: usize) -> Self {
        if rows.saturating_mul(cols) > COMPENSATION_THRESHOLD {
            Summation::Compensated
        } else {
            Summation::Plain
        }
    }

    pub fn accumulator(self) -> Accumulator {
        Accumulator {
            sum: 0.0,
            comp: 0.0,
            mode: self,
        }
    }

    pub fn sum<I: IntoIterator<Item = f64>>(self, values: I) -> f64 {
        let mut acc = self.accumulator();
        for v in values {
            acc.add(v);
        }
        acc.value()
    }

    pub fn dot(self, a: &[f64], b: &[f64]) -> f64 {
        debug_assert_eq!(a.len(), b.len());
        match self {
            // Tight loop for the common case.
            Summation::Plain => a.iter().zip(b).fold(0.0, |s, (x, y)| s + x * y),
            Summation::Compensated => self.sum(a.iter().zip(b).map(|(x, y)| x * y)),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Accumulator {
    sum: f64,
    comp: f64,
    mode: Summation,
}

impl Accumulator {
    #[inline]
    pub fn add(&mut self, value: f64) {
        match self.mode {
            Summation::Plain => self.sum += value,
            Summation::Compensated => {
                let t = self.sum + value;
                if self.sum.abs() >= value.abs() {
                    self.comp += (self.sum - t) + value;
                } else {
                    self.comp += (value - t) + self.sum;
                }
                self.sum = t;
            }
        }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
