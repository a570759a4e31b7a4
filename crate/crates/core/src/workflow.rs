//! The two-stage analysis preset: homogeneity blockmodeling first, then
//! valued blockmodeling at m values estimated from the homogeneity optimum.

use serde::{Deserialize, Serialize};

use crate::criterion::{AllowedBlocks, Approach, ModelSpec};
use crate::error::Result;
use crate::inconsistency::{BlockType, RowColFunction};
use crate::network::ValuedNetwork;
use crate::search::{local_search, SearchConfig, SearchResult};
use crate::summaries::{block_summaries, suggest_m, BlockSummaryTable, MSuggestion};

/// Combined report of the homogeneity-first workflow.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WorkflowReport {
    pub f_homogeneity: RowColFunction,
    pub f_valued: RowColFunction,
    pub hom_ss: SearchResult,
    pub hom_ad: SearchResult,
    pub summaries: BlockSummaryTable,
    pub m_suggestion: MSuggestion,
    pub m_candidates: Vec<f64>,
    pub valued_runs: Vec<(f64, SearchResult)>,
    /// Set when the valued stage was skipped (negative tie values).
    pub note: Option<String>,
}

/// Run homogeneity blockmodeling (both variants) with regular blocks, derive
/// candidate m values from the block summaries of the homogeneity optimum,
/// and evaluate valued blockmodeling at each candidate.
///
/// `f` is the homogeneity row/column function; the valued stage pairs mean
/// with sum (mean-regular and sum-regular blocks describe the same structure)
/// and keeps max as max.
pub fn workflow_preset(
    net: &ValuedNetwork,
    k: usize,
    f: RowColFunction,
    restarts: usize,
    seed: u64,
) -> Result<WorkflowReport> {
    let f_valued = match f {
        RowColFunction::Mean => RowColFunction::Sum,
        other => other,
    };
    let config = SearchConfig::new(k)
        .with_restarts(restarts)
        .with_seed(seed);
    let hom_allowed = AllowedBlocks::global(&[BlockType::Regular]);
    let hom_ss_spec = ModelSpec::new(
        Approach::HomogeneitySumSquares,
        hom_allowed.clone(),
        f,
    );
    let hom_ad_spec = ModelSpec::new(
        Approach::HomogeneityAbsoluteDeviations,
        hom_allowed,
        f,
    );
    let hom_ss = local_search(net, &hom_ss_spec, &config, None)?;
    let hom_ad = local_search(net, &hom_ad_spec, &config, None)?;

    let best_partition = hom_ss.best.partition.clone();
    let summaries = block_summaries(net, &best_partition, f_valued)?;
    let m_suggestion = suggest_m(net, Some(&best_partition), f_valued, true, None)?;
    let m_candidates = m_suggestion.candidates.clone();

    if net.min_value() < 0.0 {
        return Ok(WorkflowReport {
            f_homogeneity: f,
            f_valued,
            hom_ss,
            hom_ad,
            summaries,
            m_suggestion,
            m_candidates,
            valued_runs: Vec::new(),
            note: Some(
                "network contains negative tie values; valued blockmodeling is not applicable, \
                 homogeneity results only"
                    .to_string(),
            ),
        });
    }

    let mut valued_runs = Vec::new();
    for &m in &m_candidates {
        let spec = ModelSpec::new(
            Approach::Valued { m },
            AllowedBlocks::global(&[BlockType::Null, BlockType::Regular]),
            f_valued,
        );
        let run = local_search(net, &spec, &config, None)?;
        valued_runs.push((m, run));
    }

    Ok(WorkflowReport {
        f_homogeneity: f,
        f_valued,
        hom_ss,
        hom_ad,
        summaries,
        m_suggestion,
        m_candidates,
        valued_runs,
        note: None,
    })
}
