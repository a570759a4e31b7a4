//! Error type shared across the crate.

use thiserror::Error;

use crate::inconsistency::BlockType;

/// Errors produced by network construction, model validation, evaluation
/// and search.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows but row {row} has {cols} cells")]
    NonSquareMatrix { rows: usize, cols: usize, row: usize },

    #[error("matrix is empty")]
    EmptyMatrix,

    #[error("non-finite value {value} at cell ({row}, {col})")]
    NonFiniteValue { value: f64, row: usize, col: usize },

    #[error("expected {expected} labels, got {got}")]
    LabelCountMismatch { expected: usize, got: usize },

    #[error("slicing threshold must be positive, got {0}")]
    InvalidThreshold(f64),

    #[error("censoring ceiling must be positive, got {0}")]
    InvalidCeiling(f64),

    #[error("cluster index {index} out of range for k = {k}")]
    ClusterOutOfRange { index: usize, k: usize },

    #[error("partition has {got} units, network has {expected}")]
    PartitionSizeMismatch { expected: usize, got: usize },

    #[error("cluster {0} is empty")]
    EmptyCluster(usize),

    #[error("partition uses {got} clusters, expected {expected}")]
    ClusterCountMismatch { expected: usize, got: usize },

    #[error("block contains non-binary value {value} at cell ({row}, {col})")]
    NonBinaryValue { value: f64, row: usize, col: usize },

    #[error("block contains negative value {value} at cell ({row}, {col}); valued blockmodeling requires nonnegative ties")]
    NegativeValue { value: f64, row: usize, col: usize },

    #[error("parameter m must be positive, got {0}")]
    InvalidM(f64),

    #[error("block type {ty} is not supported by the {approach} approach")]
    UnsupportedBlockType { ty: BlockType, approach: &'static str },

    #[error("deviation measure requires a nonempty vector")]
    EmptyVector,

    #[error("allowed block set for position ({row}, {col}) is empty")]
    EmptyAllowedSet { row: usize, col: usize },

    #[error("per-position allowed matrix is {got}x{got2}, partition has k = {k}")]
    AllowedMatrixMismatch { got: usize, got2: usize, k: usize },

    #[error("center matrix is {got} rows, partition has k = {k}")]
    CenterMatrixMismatch { got: usize, k: usize },

    #[error("pre-specified center must be finite")]
    NonFiniteCenter,

    #[error("equivalence query requires two distinct units, got unit {0} twice")]
    DegenerateEquivalenceQuery(usize),

    #[error("unit index {index} out of range for n = {n}")]
    UnitOutOfRange { index: usize, n: usize },

    #[error("k = {k} exceeds the number of units n = {n}")]
    TooManyClusters { k: usize, n: usize },

    #[error("k must be at least 1")]
    ZeroClusters,

    #[error("enumeration of {count} partitions exceeds the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u128 },

    #[error("start partition is infeasible: {0}")]
    InfeasibleStart(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
