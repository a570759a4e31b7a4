//! Block extraction: the rectangular sub-matrix of ties from one cluster to
//! another, together with its diagonal treatment.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::ValuedNetwork;
use crate::partition::Partition;

/// How diagonal cells of a diagonal block enter the inconsistency sums.
///
/// * `Ignore` — diagonal cells are excluded everywhere (loop-free data).
/// * `TableVariant` — the diagonal is scored as a separate group where the
///   block catalog defines a diagonal variant (null, com, rdo, cdo).
/// * `Ordinary` — diagonal cells are treated like any other cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagonalPolicy {
    Ignore,
    #[serde(rename = "variant")]
    TableVariant,
    Ordinary,
}

impl DiagonalPolicy {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "ignore" => Some(Self::Ignore),
            "variant" | "table-variant" => Some(Self::TableVariant),
            "ordinary" => Some(Self::Ordinary),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Self::Ignore => "ignore",
            Self::TableVariant => "variant",
            Self::Ordinary => "ordinary",
        }
    }
}

/// A materialized block: the tie values from cluster `i` to cluster `j`.
#[derive(Debug, Clone)]
pub struct BlockView {
    rows: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<f64>,
    is_diagonal: bool,
    policy: DiagonalPolicy,
}

impl BlockView {
    /// Build a block directly from a dense value matrix. `is_diagonal`
    /// marks a same-cluster block, in which cell `(a, a)` is a loop.
    pub fn from_matrix(
        matrix: Vec<Vec<f64>>,
        is_diagonal: bool,
        policy: DiagonalPolicy,
    ) -> Result<Self> {
        let n_r = matrix.len();
        if n_r == 0 {
            return Err(Error::EmptyMatrix);
        }
        let n_c = matrix[0].len();
        let mut values = Vec::with_capacity(n_r * n_c);
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n_c {
                return Err(Error::NonSquareMatrix {
                    rows: n_r,
                    cols: row.len(),
                    row: i,
                });
            }
            values.extend_from_slice(row);
        }
        if is_diagonal && n_r != n_c {
            return Err(Error::NonSquareMatrix {
                rows: n_r,
                cols: n_c,
                row: 0,
            });
        }
        Ok(Self {
            rows: (0..n_r).collect(),
            cols: (0..n_c).collect(),
            values,
            is_diagonal,
            policy,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_diagonal
    }

    pub fn policy(&self) -> DiagonalPolicy {
        self.policy
    }

    #[inline]
    pub fn value(&self, a: usize, b: usize) -> f64 {
        self.values[a * self.cols.len() + b]
    }

    pub(crate) fn cells(&self) -> Cells<'_> {
        Cells {
            values: &self.values,
            n_r: self.rows.len(),
            n_c: self.cols.len(),
            is_diagonal: self.is_diagonal,
            policy: self.policy,
        }
    }
}

/// Extract the block of ties from cluster `i` to cluster `j`.
pub fn extract_block(
    net: &ValuedNetwork,
    partition: &Partition,
    i: usize,
    j: usize,
    policy: DiagonalPolicy,
) -> Result<BlockView> {
    if partition.n() != net.n() {
        return Err(Error::PartitionSizeMismatch {
            expected: net.n(),
            got: partition.n(),
        });
    }
    let rows = partition.cluster_members(i)?;
    let cols = partition.cluster_members(j)?;
    let mut values = Vec::with_capacity(rows.len() * cols.len());
    for &r in &rows {
        for &c in &cols {
            values.push(net.value(r, c));
        }
    }
    Ok(BlockView {
        rows,
        cols,
        values,
        is_diagonal: i == j,
        policy,
    })
}

/// Borrowed view of block cells, the common input of every inconsistency
/// formula. For diagonal blocks the cell `(a, a)` is the loop of the a-th
/// member (row and column lists of a diagonal block are the same units in
/// the same order).
#[derive(Clone, Copy)]
pub(crate) struct Cells<'a> {
    pub values: &'a [f64],
    pub n_r: usize,
    pub n_c: usize,
    pub is_diagonal: bool,
    pub policy: DiagonalPolicy,
}

impl<'a> Cells<'a> {
    #[inline]
    pub fn value(&self, a: usize, b: usize) -> f64 {
        self.values[a * self.n_c + b]
    }

    /// Whether cell `(a, b)` participates in the main inconsistency sums.
    #[inline]
    pub fn counted(&self, a: usize, b: usize) -> bool {
        !(self.is_diagonal && a == b && self.policy == DiagonalPolicy::Ignore)
    }

    /// Whether the diagonal is scored as a separate group.
    #[inline]
    pub fn separate_diagonal(&self) -> bool {
        self.is_diagonal && self.policy == DiagonalPolicy::TableVariant
    }

    /// Number of counted cells in one row.
    #[inline]
    pub fn row_len(&self) -> usize {
        if self.is_diagonal && self.policy == DiagonalPolicy::Ignore {
            self.n_c - 1
        } else {
            self.n_c
        }
    }

    /// Number of counted cells in one column.
    #[inline]
    pub fn col_len(&self) -> usize {
        if self.is_diagonal && self.policy == DiagonalPolicy::Ignore {
            self.n_r - 1
        } else {
            self.n_r
        }
    }

    /// Total number of counted cells (the normalization denominator).
    pub fn counted_cells(&self) -> usize {
        self.n_r * self.row_len()
    }

    /// Diagonal values, when the block is diagonal.
    pub fn diag_values(&self) -> Vec<f64> {
        debug_assert!(self.is_diagonal);
        (0..self.n_r).map(|a| self.value(a, a)).collect()
    }

    /// Counted values of row `a`.
    pub fn row_values(&self, a: usize) -> Vec<f64> {
        (0..self.n_c)
            .filter(|&b| self.counted(a, b))
            .map(|b| self.value(a, b))
            .collect()
    }

    /// Counted values of column `b`.
    pub fn col_values(&self, b: usize) -> Vec<f64> {
        (0..self.n_r)
            .filter(|&a| self.counted(a, b))
            .map(|a| self.value(a, b))
            .collect()
    }

    /// Fold over counted cells in row-major order.
    #[inline]
    pub fn for_each_counted<F: FnMut(usize, usize, f64)>(&self, mut f: F) {
        for a in 0..self.n_r {
            for b in 0..self.n_c {
                if self.counted(a, b) {
                    f(a, b, self.value(a, b));
                }
            }
        }
    }
}
