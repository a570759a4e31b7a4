//! Valued one-mode networks: a square matrix of tie values with unit labels.

use crate::error::{Error, Result};

/// A valued network on `n` units, stored as a dense row-major `n x n` matrix.
///
/// `diagonal_relevant` records whether loops (diagonal cells) carry meaning.
/// When `false` — the default for loop-free survey data — evaluation ignores
/// diagonal cells entirely.
///
/// Networks are immutable after construction; the preprocessing transforms
/// ([`slice`](Self::slice), [`censor`](Self::censor)) return new networks.
#[derive(Debug, Clone, PartialEq)]
pub struct ValuedNetwork {
    n: usize,
    values: Vec<f64>,
    labels: Vec<String>,
    diagonal_relevant: bool,
}

impl ValuedNetwork {
    /// Build a network from a dense matrix.
    ///
    /// `labels` may be empty, in which case units are labeled "1".."n".
    /// Rejects non-square matrices and non-finite values.
    pub fn new(
        matrix: Vec<Vec<f64>>,
        labels: Vec<String>,
        diagonal_relevant: bool,
    ) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut values = Vec::with_capacity(n * n);
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NonSquareMatrix {
                    rows: n,
                    cols: row.len(),
                    row: i,
                });
            }
            values.extend_from_slice(row);
        }
        Self::from_flat(n, values, labels, diagonal_relevant)
    }

    /// Build a network from an already flattened row-major matrix.
    pub fn from_flat(
        n: usize,
        values: Vec<f64>,
        labels: Vec<String>,
        diagonal_relevant: bool,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if values.len() != n * n {
            return Err(Error::NonSquareMatrix {
                rows: n,
                cols: values.len() / n.max(1),
                row: 0,
            });
        }
        for (idx, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteValue {
                    value: v,
                    row: idx / n,
                    col: idx % n,
                });
            }
        }
        let labels = if labels.is_empty() {
            (1..=n).map(|i| i.to_string()).collect()
        } else if labels.len() == n {
            labels
        } else {
            return Err(Error::LabelCountMismatch {
                expected: n,
                got: labels.len(),
            });
        };
        Ok(Self {
            n,
            values,
            labels,
            diagonal_relevant,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn diagonal_relevant(&self) -> bool {
        self.diagonal_relevant
    }

    /// True if every cell is exactly 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    /// Smallest cell value.
    pub fn min_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Largest cell value.
    pub fn max_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Binarize: cells at or above `threshold` become 1, the rest 0.
    pub fn slice(&self, threshold: f64) -> Result<ValuedNetwork> {
        if threshold.is_nan() || threshold <= 0.0 {
            return Err(Error::InvalidThreshold(threshold));
        }
        let values = self
            .values
            .iter()
            .map(|&v| if v >= threshold { 1.0 } else { 0.0 })
            .collect();
        Ok(ValuedNetwork {
            n: self.n,
            values,
            labels: self.labels.clone(),
            diagonal_relevant: self.diagonal_relevant,
        })
    }

    /// Cap cell values at `ceiling`; values at or below it are unchanged.
    pub fn censor(&self, ceiling: f64) -> Result<ValuedNetwork> {
        if ceiling.is_nan() || ceiling <= 0.0 {
            return Err(Error::InvalidCeiling(ceiling));
        }
        let values = self.values.iter().map(|&v| v.min(ceiling)).collect();
        Ok(ValuedNetwork {
            n: self.n,
            values,
            labels: self.labels.clone(),
            diagonal_relevant: self.diagonal_relevant,
        })
    }
}

/// Construct a validated network; labels empty means auto-generated "1".."n".
pub fn load_network(
    matrix: Vec<Vec<f64>>,
    labels: Vec<String>,
    diagonal_relevant: bool,
) -> Result<ValuedNetwork> {
    ValuedNetwork::new(matrix, labels, diagonal_relevant)
}
