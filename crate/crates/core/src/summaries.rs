//! Per-block summary tables and the parameter-m diagnostics.

use serde::{Deserialize, Serialize};

use crate::block::DiagonalPolicy;
use crate::error::{Error, Result};
use crate::inconsistency::RowColFunction;
use crate::network::ValuedNetwork;
use crate::partition::Partition;

/// Per-block means of row and column f-values, plus a histogram of the
/// underlying values.
///
/// When the network's diagonal is irrelevant, diagonal cells are excluded
/// from the row and column vectors. For `f = sum` the shortened vectors are
/// length-corrected (scaled by `n_c / (n_c - 1)`) so diagonal-block sums are
/// comparable with off-diagonal ones; max and mean need no correction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockSummaryTable {
    pub k: usize,
    pub f: RowColFunction,
    pub mean_row_f: Vec<Vec<f64>>,
    pub mean_col_f: Vec<Vec<f64>>,
    pub histogram: Histogram,
}

impl BlockSummaryTable {
    /// All nonzero per-block mean f-values (row and column side), the
    /// distribution examined when estimating m for regular blockmodels.
    pub fn nonzero_means(&self) -> Vec<f64> {
        self.mean_row_f
            .iter()
            .chain(self.mean_col_f.iter())
            .flatten()
            .cloned()
            .filter(|&v| v != 0.0)
            .collect()
    }
}

/// Fixed-width histogram used in reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Histogram {
    pub min: f64,
    pub max: f64,
    pub bin_width: f64,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn build(values: &[f64], bins: usize) -> Self {
        if values.is_empty() {
            return Self {
                min: 0.0,
                max: 0.0,
                bin_width: 0.0,
                counts: vec![0; bins],
            };
        }
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let width = if max > min { (max - min) / bins as f64 } else { 1.0 };
        let mut counts = vec![0usize; bins];
        for &v in values {
            let idx = (((v - min) / width) as usize).min(bins - 1);
            counts[idx] += 1;
        }
        Self {
            min,
            max,
            bin_width: width,
            counts,
        }
    }

    /// Center of the most populated bin.
    pub fn modal_center(&self) -> f64 {
        let idx = self
            .counts
            .iter()
            .enumerate()
            .max_by_key(|&(i, c)| (*c, std::cmp::Reverse(i)))
            .map(|(i, _)| i)
            .unwrap_or(0);
        self.min + (idx as f64 + 0.5) * self.bin_width
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_start,bin_end,count\n");
        for (i, c) in self.counts.iter().enumerate() {
            let lo = self.min + i as f64 * self.bin_width;
            let hi = lo + self.bin_width;
            out.push_str(&format!("{lo},{hi},{c}\n"));
        }
        out
    }
}

fn summarized_f(values: &[f64], full_len: usize, f: RowColFunction) -> f64 {
    let raw = f.apply(values);
    if f == RowColFunction::Sum && !values.is_empty() && values.len() < full_len {
        raw * full_len as f64 / values.len() as f64
    } else {
        raw
    }
}

/// Mean row and column f-values for every block of a partition.
pub fn block_summaries(
    net: &ValuedNetwork,
    partition: &Partition,
    f: RowColFunction,
) -> Result<BlockSummaryTable> {
    if partition.n() != net.n() {
        return Err(Error::PartitionSizeMismatch {
            expected: net.n(),
            got: partition.n(),
        });
    }
    let k = partition.k();
    let clusters = partition.clusters();
    let skip_diag = !net.diagonal_relevant();
    let mut mean_row_f = vec![vec![0.0; k]; k];
    let mut mean_col_f = vec![vec![0.0; k]; k];
    let mut all_values = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let rows = &clusters[i];
            let cols = &clusters[j];
            let mut row_acc = 0.0;
            for &r in rows {
                let vals: Vec<f64> = cols
                    .iter()
                    .filter(|&&c| !(skip_diag && i == j && c == r))
                    .map(|&c| net.value(r, c))
                    .collect();
                all_values.extend_from_slice(&vals);
                row_acc += summarized_f(&vals, cols.len(), f);
            }
            mean_row_f[i][j] = row_acc / rows.len() as f64;
            let mut col_acc = 0.0;
            for &c in cols {
                let vals: Vec<f64> = rows
                    .iter()
                    .filter(|&&r| !(skip_diag && i == j && r == c))
                    .map(|&r| net.value(r, c))
                    .collect();
                col_acc += summarized_f(&vals, rows.len(), f);
            }
            mean_col_f[i][j] = col_acc / cols.len() as f64;
        }
    }
    let histogram = Histogram::build(&all_values, 10);
    Ok(BlockSummaryTable {
        k,
        f,
        mean_row_f,
        mean_col_f,
        histogram,
    })
}

/// Result of a two-means split of a value distribution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwoMeansSplit {
    pub low_mean: f64,
    pub high_mean: f64,
    pub within_ss: f64,
    pub between_ss: f64,
}

/// Optimal split of the values into a low and a high group, minimizing the
/// within-group sum of squares.
pub fn two_means_split(values: &[f64]) -> Option<TwoMeansSplit> {
    if values.len() < 2 {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let n = v.len();
    let total: f64 = v.iter().sum();
    let total_sq: f64 = v.iter().map(|x| x * x).sum();
    let total_ss = total_sq - total * total / n as f64;
    let mut best: Option<(f64, usize)> = None;
    let mut acc = 0.0;
    let mut acc_sq = 0.0;
    for split in 1..n {
        acc += v[split - 1];
        acc_sq += v[split - 1] * v[split - 1];
        let n1 = split as f64;
        let n2 = (n - split) as f64;
        let ss1 = acc_sq - acc * acc / n1;
        let ss2 = (total_sq - acc_sq) - (total - acc) * (total - acc) / n2;
        let within = ss1 + ss2;
        if best.map(|(w, _)| within < w).unwrap_or(true) {
            best = Some((within, split));
        }
    }
    let (within_ss, split) = best?;
    let low: &[f64] = &v[..split];
    let high: &[f64] = &v[split..];
    Some(TwoMeansSplit {
        low_mean: low.iter().sum::<f64>() / low.len() as f64,
        high_mean: high.iter().sum::<f64>() / high.len() as f64,
        within_ss,
        between_ss: (total_ss - within_ss).max(0.0),
    })
}

/// Round to the nearest value of the 1-2-5 series in log space.
pub fn round_to_125(x: f64) -> f64 {
    if x.is_nan() || x <= 0.0 {
        return 1.0;
    }
    let exp = x.log10().floor() as i32;
    let mut best = 1.0;
    let mut best_dist = f64::INFINITY;
    for e in (exp - 1)..=(exp + 1) {
        for s in [1.0, 2.0, 5.0] {
            let candidate = s * 10f64.powi(e);
            let dist = (x.ln() - candidate.ln()).abs();
            if dist < best_dist {
                best_dist = dist;
                best = candidate;
            }
        }
    }
    best
}

/// The recommendation shape of [`suggest_m`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum MRange {
    /// Distribution is bimodal: m should fall between the two modes.
    Interval(f64, f64),
    /// Distribution is unimodal: m around the mode.
    Around(f64),
}

/// Diagnostics for choosing the valued-blockmodeling parameter m.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MSuggestion {
    /// What the examined values are.
    pub distribution: String,
    pub values: Vec<f64>,
    pub histogram: Histogram,
    pub bimodal: bool,
    pub recommended: MRange,
    /// Rounded test values: the low mode rounded to the 1-2-5 series and
    /// its double.
    pub candidates: Vec<f64>,
    /// `[t, 2t]` when a slicing threshold `t` is supplied.
    pub slice_rule: Option<(f64, f64)>,
}

/// Examine the distribution relevant to the blockmodel (cell values for
/// non-regular models, row/column f-values for regular ones; zeros excluded)
/// and suggest a range for m.
pub fn suggest_m(
    net: &ValuedNetwork,
    partition: Option<&Partition>,
    f: RowColFunction,
    blocks_regular: bool,
    slice_threshold: Option<f64>,
) -> Result<MSuggestion> {
    let (distribution, values): (String, Vec<f64>) = if blocks_regular {
        let p = match partition {
            Some(p) => p.clone(),
            None => Partition::whole(net.n()),
        };
        let table = block_summaries(net, &p, f)?;
        (
            format!("per-block mean row/column {} values (zeros excluded)", f.tag()),
            table.nonzero_means(),
        )
    } else {
        let vals: Vec<f64> = net.values().iter().cloned().filter(|&v| v != 0.0).collect();
        ("cell values (zeros excluded)".to_string(), vals)
    };
    let histogram = Histogram::build(&values, 10);
    let split = two_means_split(&values);
    let (bimodal, recommended, candidates) = match split {
        Some(s) if s.between_ss >= s.within_ss && s.high_mean > s.low_mean => {
            let low = round_to_125(s.low_mean);
            (
                true,
                MRange::Interval(s.low_mean, s.high_mean),
                vec![low, 2.0 * low],
            )
        }
        _ => {
            let mode = histogram.modal_center();
            let rounded = round_to_125(mode);
            (false, MRange::Around(mode), vec![rounded])
        }
    };
    let slice_rule = slice_threshold.map(|t| (t, 2.0 * t));
    Ok(MSuggestion {
        distribution,
        values,
        histogram,
        bimodal,
        recommended,
        candidates,
        slice_rule,
    })
}

/// Default policy used when reporting blocks of a network.
pub fn reporting_policy(net: &ValuedNetwork) -> DiagonalPolicy {
    if net.diagonal_relevant() {
        DiagonalPolicy::Ordinary
    } else {
        DiagonalPolicy::Ignore
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets;

    fn figure_partition() -> Partition {
        Partition::from_assignment(&[0, 1, 1, 2, 0, 1, 0, 2, 2, 0, 0, 1, 1]).unwrap()
    }

    #[test]
    fn mean_row_sums_reproduce_reference_entries() {
        let net = datasets::students();
        let table = block_summaries(&net, &figure_partition(), RowColFunction::Sum).unwrap();
        let expect_rows = [
            [2.0, 8.8, 31.2],
            [10.8, 5.5, 14.6],
            [1.3, 2.0, 25.5],
        ];
        let expect_cols = [
            [2.0, 8.8, 52.0],
            [10.8, 5.5, 24.3],
            [0.8, 1.2, 25.5],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert!(
                    (table.mean_row_f[i][j] - expect_rows[i][j]).abs() < 0.05,
                    "row ({i},{j}): got {} want {}",
                    table.mean_row_f[i][j],
                    expect_rows[i][j]
                );
                assert!(
                    (table.mean_col_f[i][j] - expect_cols[i][j]).abs() < 0.05,
                    "col ({i},{j}): got {} want {}",
                    table.mean_col_f[i][j],
                    expect_cols[i][j]
                );
            }
        }
    }

    #[test]
    fn diagonal_block_row_and_col_means_agree() {
        let net = datasets::students();
        let table = block_summaries(&net, &figure_partition(), RowColFunction::Sum).unwrap();
        for i in 0..3 {
            assert!((table.mean_row_f[i][i] - table.mean_col_f[i][i]).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_network_summaries_are_zero() {
        let net = crate::network::load_network(vec![vec![0.0; 4]; 4], vec![], false).unwrap();
        let p = Partition::from_assignment(&[0, 0, 1, 1]).unwrap();
        let table = block_summaries(&net, &p, RowColFunction::Sum).unwrap();
        assert!(table.mean_row_f.iter().flatten().all(|&v| v == 0.0));
        assert!(table.mean_col_f.iter().flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn suggest_m_regular_sum_covers_5_to_10() {
        let net = datasets::students();
        let s = suggest_m(
            &net,
            Some(&figure_partition()),
            RowColFunction::Sum,
            true,
            None,
        )
        .unwrap();
        assert!(s.bimodal);
        assert_eq!(s.candidates, vec![5.0, 10.0]);
        match s.recommended {
            MRange::Interval(lo, hi) => {
                assert!(lo <= 6.0 && hi >= 10.0, "interval [{lo}, {hi}]");
            }
            MRange::Around(_) => panic!("expected bimodal interval"),
        }
    }

    #[test]
    fn suggest_m_regular_max_is_near_5() {
        let net = datasets::students();
        let s = suggest_m(
            &net,
            Some(&figure_partition()),
            RowColFunction::Max,
            true,
            None,
        )
        .unwrap();
        assert_eq!(s.candidates[0], 5.0);
    }

    #[test]
    fn slice_rule_reported() {
        let net = datasets::students();
        let s = suggest_m(&net, None, RowColFunction::Max, false, Some(3.0)).unwrap();
        assert_eq!(s.slice_rule, Some((3.0, 6.0)));
    }

    #[test]
    fn two_means_split_basic() {
        let s = two_means_split(&[1.0, 1.0, 2.0, 10.0, 11.0, 12.0]).unwrap();
        assert!((s.low_mean - 4.0 / 3.0).abs() < 1e-12);
        assert!((s.high_mean - 11.0).abs() < 1e-12);
        assert!(s.between_ss > s.within_ss);
    }

    #[test]
    fn round_125_series() {
        assert_eq!(round_to_125(5.7), 5.0);
        assert_eq!(round_to_125(3.39), 5.0);
        assert_eq!(round_to_125(1.4), 1.0);
        assert_eq!(round_to_125(1.5), 2.0);
        assert_eq!(round_to_125(40.0), 50.0);
        assert_eq!(round_to_125(0.3), 0.2);
    }
}
