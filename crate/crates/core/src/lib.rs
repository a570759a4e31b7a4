//! Generalized blockmodeling of valued one-mode networks.
//!
//! The crate evaluates how well a partition of network units fits a
//! blockmodel under three criterion families — binary, valued (threshold m)
//! and homogeneity (sum-of-squares or absolute-deviations variability) —
//! and searches for minimum-inconsistency partitions directly, by
//! multi-start relocation descent or exhaustive enumeration.
//!
//! Entry points:
//! * [`network::ValuedNetwork`] — the data, with slicing and censoring.
//! * [`criterion::ModelSpec`] / [`criterion::total_inconsistency`] — evaluate
//!   a partition.
//! * [`search::local_search`] / [`search::exhaustive_search`] — optimize.
//! * [`summaries`] / [`workflow`] — block summary tables, parameter-m
//!   diagnostics and the homogeneity-first preset.

pub mod block;
pub mod criterion;
pub mod datasets;
pub mod equivalence;
pub mod error;
pub mod inconsistency;
pub mod io;
pub mod network;
pub mod partition;
pub mod report;
pub mod search;
pub mod summaries;
pub mod workflow;

pub use block::{extract_block, BlockView, DiagonalPolicy};
pub use criterion::{
    block_fit, total_inconsistency, AllowedBlocks, Approach, FitResult, ModelSpec,
};
pub use equivalence::{check_f_regular_equivalence, check_structural_equivalence};
pub use error::{Error, Result};
pub use inconsistency::{
    ad, binary_block_inconsistency, homogeneity_block_inconsistency, normalize, ss,
    valued_block_inconsistency, BinaryBlockStats, BlockType, Center, HomogeneityVariant,
    RowColFunction,
};
pub use network::{load_network, ValuedNetwork};
pub use partition::{count_partitions, for_each_partition, Partition};
pub use search::{
    exhaustive_search, local_search, multistart_report, MultistartReport, Neighborhood,
    SearchConfig, SearchResult,
};
pub use summaries::{block_summaries, suggest_m, BlockSummaryTable, MRange, MSuggestion};
pub use workflow::{workflow_preset, WorkflowReport};
