//! Report rendering: partition/image/inconsistency CSVs, the reordered
//! matrix view, and the deterministic machine-readable summary.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::criterion::FitResult;
use crate::inconsistency::BlockType;
use crate::io::format_value;
use crate::network::ValuedNetwork;
use crate::partition::Partition;
use crate::search::SearchResult;

/// `label,cluster` CSV with 1-based cluster numbers.
pub fn partition_csv(net: &ValuedNetwork, partition: &Partition) -> String {
    let mut out = String::from("label,cluster\n");
    for (unit, label) in net.labels().iter().enumerate() {
        out.push_str(&format!("{label},{}\n", partition.cluster_of(unit) + 1));
    }
    out
}

/// k x k image matrix as CSV of catalog tags.
pub fn image_csv(image: &[Vec<BlockType>]) -> String {
    let mut out = String::new();
    for row in image {
        let tags: Vec<&str> = row.iter().map(|t| t.tag()).collect();
        out.push_str(&tags.join(","));
        out.push('\n');
    }
    out
}

/// k x k per-block inconsistency matrix as CSV.
pub fn inconsistencies_csv(table: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in table {
        let cells: Vec<String> = row.iter().map(|&v| format!("{v}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Text rendering of the matrix with rows and columns grouped by cluster,
/// cluster boundaries marked, and zeros left blank.
pub fn render_reordered_matrix(net: &ValuedNetwork, partition: &Partition) -> String {
    let clusters = partition.clusters();
    let order: Vec<usize> = clusters.iter().flatten().cloned().collect();
    let boundary: Vec<usize> = clusters
        .iter()
        .scan(0usize, |acc, c| {
            *acc += c.len();
            Some(*acc)
        })
        .collect();
    let width = net
        .labels()
        .iter()
        .map(|l| l.len())
        .chain(net.values().iter().map(|&v| format_value(v).len()))
        .max()
        .unwrap_or(1)
        .max(2);
    let is_boundary = |pos: usize| boundary[..boundary.len() - 1].contains(&pos);

    let mut out = String::new();
    // header row
    out.push_str(&" ".repeat(width));
    for (pos, &u) in order.iter().enumerate() {
        out.push_str(if is_boundary(pos) { " | " } else { " " });
        out.push_str(&format!("{:>width$}", net.labels()[u]));
    }
    out.push('\n');
    let line_len = out.len();
    out.push_str(&"-".repeat(line_len - 1));
    out.push('\n');

    for (rpos, &r) in order.iter().enumerate() {
        if is_boundary(rpos) {
            out.push_str(&"-".repeat(line_len - 1));
            out.push('\n');
        }
        out.push_str(&format!("{:>width$}", net.labels()[r]));
        for (cpos, &c) in order.iter().enumerate() {
            out.push_str(if is_boundary(cpos) { " | " } else { " " });
            let v = net.value(r, c);
            if v == 0.0 {
                out.push_str(&" ".repeat(width));
            } else {
                out.push_str(&format!("{:>width$}", format_value(v)));
            }
        }
        out.push('\n');
    }
    out
}

/// The deterministic machine-readable summary of a run. Field order and map
/// ordering are fixed so identical runs serialize to identical bytes; wall
/// clock timing is deliberately left to the human report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MachineSummary {
    pub config: BTreeMap<String, String>,
    pub labels: Vec<String>,
    pub total: f64,
    pub partition: Vec<usize>,
    pub image: Vec<Vec<String>>,
    pub block_inconsistencies: Vec<Vec<f64>>,
    pub ties: Vec<Vec<Vec<String>>>,
    pub optima_count: usize,
    pub optima: Vec<Vec<usize>>,
    pub restarts_reaching_best: usize,
    pub evaluations: u64,
}

impl MachineSummary {
    pub fn from_search(
        net: &ValuedNetwork,
        result: &SearchResult,
        config: BTreeMap<String, String>,
    ) -> Self {
        Self::build(net, &result.best, Some(result), config)
    }

    pub fn from_fit(
        net: &ValuedNetwork,
        fit: &FitResult,
        config: BTreeMap<String, String>,
    ) -> Self {
        Self::build(net, fit, None, config)
    }

    fn build(
        net: &ValuedNetwork,
        fit: &FitResult,
        result: Option<&SearchResult>,
        config: BTreeMap<String, String>,
    ) -> Self {
        MachineSummary {
            config,
            labels: net.labels().to_vec(),
            total: fit.total,
            partition: fit.partition.assignment().to_vec(),
            image: fit
                .image
                .iter()
                .map(|row| row.iter().map(|t| t.tag().to_string()).collect())
                .collect(),
            block_inconsistencies: fit.block_inconsistencies.clone(),
            ties: fit
                .ties
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|set| set.iter().map(|t| t.tag().to_string()).collect())
                        .collect()
                })
                .collect(),
            optima_count: result.map(|r| r.optima.len()).unwrap_or(1),
            optima: result
                .map(|r| {
                    r.optima
                        .iter()
                        .map(|p| p.assignment().to_vec())
                        .collect()
                })
                .unwrap_or_default(),
            restarts_reaching_best: result.map(|r| r.restarts_reaching_best).unwrap_or(1),
            evaluations: result.map(|r| r.evaluations).unwrap_or(1),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}
