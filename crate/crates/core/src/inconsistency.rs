//! The block-type catalog and every block-inconsistency formula: binary and
//! valued deviations from the catalog's ideal patterns, and homogeneity
//! (sum-of-squares / absolute-deviations) variability measures.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::block::{BlockView, Cells, DiagonalPolicy};
use crate::error::{Error, Result};

/// `(x)+`: the positive part of `x`.
#[inline]
pub fn pos_part(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// `(x)-`: the negative part of `x` (nonpositive).
#[inline]
pub fn neg_part(x: f64) -> f64 {
    if x < 0.0 {
        x
    } else {
        0.0
    }
}

/// The nine ideal block types. Enum order is the winner-precedence order
/// used to break ties among co-minimal types: more specific patterns first.
/// Serializes as the catalog labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BlockType {
    #[serde(rename = "null")]
    Null,
    #[serde(rename = "com")]
    Complete,
    #[serde(rename = "rdo")]
    RowDominant,
    #[serde(rename = "cdo")]
    ColDominant,
    #[serde(rename = "rre")]
    RowRegular,
    #[serde(rename = "cre")]
    ColRegular,
    #[serde(rename = "reg")]
    Regular,
    #[serde(rename = "rfn")]
    RowFunctional,
    #[serde(rename = "cfn")]
    ColFunctional,
}

impl BlockType {
    pub const ALL: [BlockType; 9] = [
        BlockType::Null,
        BlockType::Complete,
        BlockType::RowDominant,
        BlockType::ColDominant,
        BlockType::RowRegular,
        BlockType::ColRegular,
        BlockType::Regular,
        BlockType::RowFunctional,
        BlockType::ColFunctional,
    ];

    /// The catalog label ("null", "com", "rdo", "cdo", "rre", "cre", "reg",
    /// "rfn", "cfn").
    pub fn tag(&self) -> &'static str {
        match self {
            BlockType::Null => "null",
            BlockType::Complete => "com",
            BlockType::RowDominant => "rdo",
            BlockType::ColDominant => "cdo",
            BlockType::RowRegular => "rre",
            BlockType::ColRegular => "cre",
            BlockType::Regular => "reg",
            BlockType::RowFunctional => "rfn",
            BlockType::ColFunctional => "cfn",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "null" => Some(BlockType::Null),
            "com" => Some(BlockType::Complete),
            "rdo" => Some(BlockType::RowDominant),
            "cdo" => Some(BlockType::ColDominant),
            "rre" => Some(BlockType::RowRegular),
            "cre" => Some(BlockType::ColRegular),
            "reg" => Some(BlockType::Regular),
            "rfn" => Some(BlockType::RowFunctional),
            "cfn" => Some(BlockType::ColFunctional),
            _ => None,
        }
    }

    /// Whether the type has a defined homogeneity inconsistency. Dominant
    /// and functional blocks do not.
    pub fn supports_homogeneity(&self) -> bool {
        matches!(
            self,
            BlockType::Null
                | BlockType::Complete
                | BlockType::RowRegular
                | BlockType::ColRegular
                | BlockType::Regular
        )
    }
}

impl fmt::Display for BlockType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The row/column summary function `f` used by the regular block types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowColFunction {
    Max,
    Sum,
    Mean,
}

impl RowColFunction {
    /// Apply to a value vector; an empty vector yields 0.
    pub fn apply(&self, values: &[f64]) -> f64 {
        if values.is_empty() {
            return 0.0;
        }
        match self {
            RowColFunction::Max => values.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            RowColFunction::Sum => values.iter().sum(),
            RowColFunction::Mean => values.iter().sum::<f64>() / values.len() as f64,
        }
    }

    /// True when `f(a) >= max(a)` for every nonnegative vector `a`. Using a
    /// function without this property in valued regular blocks breaks the
    /// compatibility with complete blocks.
    pub fn dominates_max(&self) -> bool {
        matches!(self, RowColFunction::Max | RowColFunction::Sum)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            RowColFunction::Max => "max",
            RowColFunction::Sum => "sum",
            RowColFunction::Mean => "mean",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "max" => Some(RowColFunction::Max),
            "sum" => Some(RowColFunction::Sum),
            "mean" => Some(RowColFunction::Mean),
            _ => None,
        }
    }
}

/// The central value homogeneity deviations are measured from: fitted
/// (mean for ss, median for ad) or pre-specified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Center {
    Fitted,
    Prespecified(f64),
}

impl Center {
    pub fn validate(&self) -> Result<()> {
        if let Center::Prespecified(v) = self {
            if !v.is_finite() {
                return Err(Error::NonFiniteCenter);
            }
        }
        Ok(())
    }
}

/// The two homogeneity variability measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HomogeneityVariant {
    SumSquares,
    AbsoluteDeviations,
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

fn ss_around(values: &[f64], c: f64) -> f64 {
    values.iter().map(|&x| (x - c) * (x - c)).sum()
}

fn ad_around(values: &[f64], c: f64) -> f64 {
    values.iter().map(|&x| (x - c).abs()).sum()
}

/// Sum of squared deviations from the mean (fitted) or a given center.
pub fn ss(values: &[f64], center: Center) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyVector);
    }
    center.validate()?;
    Ok(ss_dev(values, center))
}

/// Sum of absolute deviations from the median (fitted) or a given center.
pub fn ad(values: &[f64], center: Center) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyVector);
    }
    center.validate()?;
    Ok(ad_dev(values, center))
}

fn ss_dev(values: &[f64], center: Center) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let c = match center {
        Center::Fitted => mean(values),
        Center::Prespecified(v) => v,
    };
    ss_around(values, c)
}

fn ad_dev(values: &[f64], center: Center) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let c = match center {
        Center::Fitted => median(values),
        Center::Prespecified(v) => v,
    };
    ad_around(values, c)
}

fn deviation(variant: HomogeneityVariant, values: &[f64], center: Center) -> f64 {
    match variant {
        HomogeneityVariant::SumSquares => ss_dev(values, center),
        HomogeneityVariant::AbsoluteDeviations => ad_dev(values, center),
    }
}

/// Count summaries of a binary block, taken over the cells the diagonal
/// policy counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryBlockStats {
    /// Total ones.
    pub s_t: usize,
    /// Ones on the diagonal (0 for off-diagonal blocks).
    pub s_d: usize,
    /// Rows containing at least one 1.
    pub p_r: usize,
    /// Columns containing at least one 1.
    pub p_c: usize,
    /// Maximal row sum.
    pub m_r: usize,
    /// Maximal column sum.
    pub m_c: usize,
    pub n_r: usize,
    pub n_c: usize,
}

impl BinaryBlockStats {
    pub fn from_block(block: &BlockView) -> Result<Self> {
        let c = block.cells();
        validate_binary(&c)?;
        Ok(Self::from_cells(&c))
    }

    pub(crate) fn from_cells(c: &Cells<'_>) -> Self {
        let (mut s_t, mut s_d, mut p_r, mut p_c, mut m_r, mut m_c) = (0, 0, 0, 0, 0, 0);
        let mut col_sums = vec![0usize; c.n_c];
        for a in 0..c.n_r {
            let mut row_sum = 0usize;
            for (b, col_sum) in col_sums.iter_mut().enumerate() {
                if !c.counted(a, b) {
                    continue;
                }
                if c.value(a, b) == 1.0 {
                    row_sum += 1;
                    *col_sum += 1;
                    if c.is_diagonal && a == b {
                        s_d += 1;
                    }
                }
            }
            s_t += row_sum;
            if row_sum > 0 {
                p_r += 1;
            }
            m_r = m_r.max(row_sum);
        }
        for &cs in &col_sums {
            if cs > 0 {
                p_c += 1;
            }
            m_c = m_c.max(cs);
        }
        Self {
            s_t,
            s_d,
            p_r,
            p_c,
            m_r,
            m_c,
            n_r: c.n_r,
            n_c: c.n_c,
        }
    }
}

pub(crate) fn check_binary_cells(c: &Cells<'_>) -> Result<()> {
    validate_binary(c)
}

pub(crate) fn check_nonnegative_cells(c: &Cells<'_>) -> Result<()> {
    validate_nonnegative(c)
}

fn validate_binary(c: &Cells<'_>) -> Result<()> {
    for a in 0..c.n_r {
        for b in 0..c.n_c {
            if !c.counted(a, b) {
                continue;
            }
            let v = c.value(a, b);
            if v != 0.0 && v != 1.0 {
                return Err(Error::NonBinaryValue {
                    value: v,
                    row: a,
                    col: b,
                });
            }
        }
    }
    Ok(())
}

fn validate_nonnegative(c: &Cells<'_>) -> Result<()> {
    for a in 0..c.n_r {
        for b in 0..c.n_c {
            if !c.counted(a, b) {
                continue;
            }
            let v = c.value(a, b);
            if v < 0.0 {
                return Err(Error::NegativeValue {
                    value: v,
                    row: a,
                    col: b,
                });
            }
        }
    }
    Ok(())
}

/// Whether the diagonal is scored as a separate group for this type. Only
/// null, com, rdo and cdo have a diagonal variant in the catalog.
fn separate_diag(c: &Cells<'_>, ty: BlockType) -> bool {
    c.separate_diagonal()
        && matches!(
            ty,
            BlockType::Null | BlockType::Complete | BlockType::RowDominant | BlockType::ColDominant
        )
}

/// Cell `(a, b)` participates in the main sum for this type.
#[inline]
fn in_main(c: &Cells<'_>, sep: bool, a: usize, b: usize) -> bool {
    c.counted(a, b) && !(sep && a == b)
}

/// Deviation of a binary block from the ideal pattern, as an error count.
pub fn binary_block_inconsistency(block: &BlockView, ty: BlockType) -> Result<f64> {
    let c = block.cells();
    validate_binary(&c)?;
    Ok(binary_delta(&c, ty))
}

pub(crate) fn binary_delta(c: &Cells<'_>, ty: BlockType) -> f64 {
    let sep = separate_diag(c, ty);
    // cost of treating the diagonal as all-0 vs all-1, whichever is cheaper
    let diag_term = if sep {
        let ones = (0..c.n_r).filter(|&a| c.value(a, a) == 1.0).count();
        ones.min(c.n_r - ones) as f64
    } else {
        0.0
    };
    let count_row = |a: usize, pred: &dyn Fn(f64) -> bool| -> usize {
        (0..c.n_c)
            .filter(|&b| in_main(c, sep, a, b) && pred(c.value(a, b)))
            .count()
    };
    let count_col = |b: usize, pred: &dyn Fn(f64) -> bool| -> usize {
        (0..c.n_r)
            .filter(|&a| in_main(c, sep, a, b) && pred(c.value(a, b)))
            .count()
    };
    let one = |v: f64| v == 1.0;
    let zero = |v: f64| v == 0.0;

    match ty {
        BlockType::Null => {
            let ones: usize = (0..c.n_r).map(|a| count_row(a, &one)).sum();
            ones as f64 + diag_term
        }
        BlockType::Complete => {
            let zeros: usize = (0..c.n_r).map(|a| count_row(a, &zero)).sum();
            zeros as f64 + diag_term
        }
        BlockType::RowDominant => {
            let best = (0..c.n_r).map(|a| count_row(a, &zero)).min().unwrap_or(0);
            (best * c.n_r) as f64 + diag_term
        }
        BlockType::ColDominant => {
            let best = (0..c.n_c).map(|b| count_col(b, &zero)).min().unwrap_or(0);
            (best * c.n_c) as f64 + diag_term
        }
        BlockType::RowRegular => {
            let null_rows = (0..c.n_r).filter(|&a| count_row(a, &one) == 0).count();
            (null_rows * c.row_len()) as f64
        }
        BlockType::ColRegular => {
            let null_cols = (0..c.n_c).filter(|&b| count_col(b, &one) == 0).count();
            (null_cols * c.col_len()) as f64
        }
        BlockType::Regular => {
            // counted cells lying in a null row or a null column, counted once
            let null_row: Vec<bool> = (0..c.n_r).map(|a| count_row(a, &one) == 0).collect();
            let null_col: Vec<bool> = (0..c.n_c).map(|b| count_col(b, &one) == 0).collect();
            let nr = null_row.iter().filter(|&&x| x).count();
            let nc = null_col.iter().filter(|&&x| x).count();
            let in_row = nr * c.row_len();
            let in_col = nc * c.col_len();
            let mut overlap = nr * nc;
            if c.is_diagonal && c.policy == DiagonalPolicy::Ignore {
                // diagonal cells are not counted, so pairs (a, a) with a null
                // row and a null column do not overlap at a counted cell
                overlap -= (0..c.n_r).filter(|&a| null_row[a] && null_col[a]).count();
            }
            (in_row + in_col - overlap) as f64
        }
        BlockType::RowFunctional => {
            let ones: usize = (0..c.n_r).map(|a| count_row(a, &one)).sum();
            let non_null = (0..c.n_r).filter(|&a| count_row(a, &one) > 0).count();
            let null_rows = c.n_r - non_null;
            (ones - non_null + null_rows * c.row_len()) as f64
        }
        BlockType::ColFunctional => {
            let ones: usize = (0..c.n_c).map(|b| count_col(b, &one)).sum();
            let non_null = (0..c.n_c).filter(|&b| count_col(b, &one) > 0).count();
            let null_cols = c.n_c - non_null;
            (ones - non_null + null_cols * c.col_len()) as f64
        }
    }
}

/// Deviation of a valued block from the ideal pattern at threshold `m`.
///
/// `f` enters only the regular types (rre, cre, reg); the functional types
/// always use the row/column maximum.
pub fn valued_block_inconsistency(
    block: &BlockView,
    ty: BlockType,
    m: f64,
    f: RowColFunction,
) -> Result<f64> {
    let c = block.cells();
    if m.is_nan() || m <= 0.0 {
        return Err(Error::InvalidM(m));
    }
    validate_nonnegative(&c)?;
    Ok(valued_delta(&c, ty, m, f))
}

pub(crate) fn valued_delta(c: &Cells<'_>, ty: BlockType, m: f64, f: RowColFunction) -> f64 {
    let sep = separate_diag(c, ty);
    // cheaper of keeping the diagonal at 0 and raising every loop to m
    let diag_term = if sep {
        let d = c.diag_values();
        let all_zero: f64 = d.iter().sum();
        let all_m: f64 = d.iter().map(|&x| pos_part(m - x)).sum();
        all_zero.min(all_m)
    } else {
        0.0
    };
    let row_deficit_sum = |a: usize| -> f64 {
        (0..c.n_c)
            .filter(|&b| in_main(c, sep, a, b))
            .map(|b| pos_part(m - c.value(a, b)))
            .sum()
    };
    let col_deficit_sum = |b: usize| -> f64 {
        (0..c.n_r)
            .filter(|&a| in_main(c, sep, a, b))
            .map(|a| pos_part(m - c.value(a, b)))
            .sum()
    };

    match ty {
        BlockType::Null => {
            let mut total = 0.0;
            c.for_each_counted(|a, b, v| {
                if !(sep && a == b) {
                    total += v;
                }
            });
            total + diag_term
        }
        BlockType::Complete => {
            let total: f64 = (0..c.n_r).map(row_deficit_sum).sum();
            total + diag_term
        }
        BlockType::RowDominant => {
            let best = (0..c.n_r)
                .map(row_deficit_sum)
                .fold(f64::INFINITY, f64::min);
            let best = if best.is_finite() { best } else { 0.0 };
            best * c.n_r as f64 + diag_term
        }
        BlockType::ColDominant => {
            let best = (0..c.n_c)
                .map(col_deficit_sum)
                .fold(f64::INFINITY, f64::min);
            let best = if best.is_finite() { best } else { 0.0 };
            best * c.n_c as f64 + diag_term
        }
        BlockType::RowRegular => {
            let total: f64 = (0..c.n_r)
                .map(|a| pos_part(m - f.apply(&c.row_values(a))))
                .sum();
            total * c.row_len() as f64
        }
        BlockType::ColRegular => {
            let total: f64 = (0..c.n_c)
                .map(|b| pos_part(m - f.apply(&c.col_values(b))))
                .sum();
            total * c.col_len() as f64
        }
        BlockType::Regular => {
            let row_def: Vec<f64> = (0..c.n_r)
                .map(|a| pos_part(m - f.apply(&c.row_values(a))))
                .collect();
            let col_def: Vec<f64> = (0..c.n_c)
                .map(|b| pos_part(m - f.apply(&c.col_values(b))))
                .collect();
            let mut total = 0.0;
            c.for_each_counted(|a, b, _| total += row_def[a].max(col_def[b]));
            total
        }
        BlockType::RowFunctional => {
            let mut total = 0.0;
            for a in 0..c.n_r {
                let (mut max_v, mut arg) = (f64::NEG_INFINITY, None);
                for b in 0..c.n_c {
                    if c.counted(a, b) && c.value(a, b) > max_v {
                        max_v = c.value(a, b);
                        arg = Some(b);
                    }
                }
                let max_v = if arg.is_some() { max_v } else { 0.0 };
                total += pos_part(m - max_v) * c.row_len() as f64;
                for b in 0..c.n_c {
                    if c.counted(a, b) && arg != Some(b) {
                        total += c.value(a, b);
                    }
                }
            }
            total
        }
        BlockType::ColFunctional => {
            let mut total = 0.0;
            for b in 0..c.n_c {
                let (mut max_v, mut arg) = (f64::NEG_INFINITY, None);
                for a in 0..c.n_r {
                    if c.counted(a, b) && c.value(a, b) > max_v {
                        max_v = c.value(a, b);
                        arg = Some(a);
                    }
                }
                let max_v = if arg.is_some() { max_v } else { 0.0 };
                total += pos_part(m - max_v) * c.col_len() as f64;
                for a in 0..c.n_r {
                    if c.counted(a, b) && arg != Some(a) {
                        total += c.value(a, b);
                    }
                }
            }
            total
        }
    }
}

/// Within-block variability of a block relative to the homogeneity ideal.
///
/// Only null, com, rre, cre and reg are defined. `center` applies to com
/// (null is com with a pre-specified center of 0); the regular types always
/// fit their centers.
pub fn homogeneity_block_inconsistency(
    block: &BlockView,
    ty: BlockType,
    variant: HomogeneityVariant,
    f: RowColFunction,
    center: Center,
) -> Result<f64> {
    if !ty.supports_homogeneity() {
        return Err(Error::UnsupportedBlockType {
            ty,
            approach: "homogeneity",
        });
    }
    center.validate()?;
    Ok(homogeneity_delta(&block.cells(), ty, variant, f, center))
}

pub(crate) fn homogeneity_delta(
    c: &Cells<'_>,
    ty: BlockType,
    variant: HomogeneityVariant,
    f: RowColFunction,
    center: Center,
) -> f64 {
    let sep = c.separate_diagonal() && matches!(ty, BlockType::Null | BlockType::Complete);
    let diag_term = if sep {
        deviation(variant, &c.diag_values(), Center::Fitted)
    } else {
        0.0
    };
    let main_values = || -> Vec<f64> {
        let mut out = Vec::with_capacity(c.n_r * c.n_c);
        c.for_each_counted(|a, b, v| {
            if !(sep && a == b) {
                out.push(v);
            }
        });
        out
    };
    match ty {
        BlockType::Null => deviation(variant, &main_values(), Center::Prespecified(0.0)) + diag_term,
        BlockType::Complete => deviation(variant, &main_values(), center) + diag_term,
        BlockType::RowRegular => {
            let fv: Vec<f64> = (0..c.n_r).map(|a| f.apply(&c.row_values(a))).collect();
            deviation(variant, &fv, Center::Fitted) * c.row_len() as f64
        }
        BlockType::ColRegular => {
            let fv: Vec<f64> = (0..c.n_c).map(|b| f.apply(&c.col_values(b))).collect();
            deviation(variant, &fv, Center::Fitted) * c.col_len() as f64
        }
        BlockType::Regular => {
            let rfv: Vec<f64> = (0..c.n_r).map(|a| f.apply(&c.row_values(a))).collect();
            let cfv: Vec<f64> = (0..c.n_c).map(|b| f.apply(&c.col_values(b))).collect();
            let row_part = deviation(variant, &rfv, Center::Fitted) * c.row_len() as f64;
            let col_part = deviation(variant, &cfv, Center::Fitted) * c.col_len() as f64;
            row_part.max(col_part)
        }
        _ => unreachable!("validated above"),
    }
}

/// Divide a block inconsistency by the number of cells the diagonal policy
/// counts. A block with no counted cells normalizes to 0.
pub fn normalize(delta: f64, block: &BlockView) -> f64 {
    normalize_cells(delta, &block.cells())
}

pub(crate) fn normalize_cells(delta: f64, c: &Cells<'_>) -> f64 {
    let cells = c.counted_cells();
    if cells == 0 {
        0.0
    } else {
        delta / cells as f64
    }
}
