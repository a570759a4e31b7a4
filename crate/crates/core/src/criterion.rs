//! The criterion function: per-block fit against the allowed ideal types and
//! the total inconsistency of a partition, with the winning image matrix.

use serde::{Deserialize, Serialize};

use crate::block::{BlockView, Cells, DiagonalPolicy};
use crate::error::{Error, Result};
use crate::inconsistency::{
    binary_delta, homogeneity_delta, normalize_cells, valued_delta, BlockType, Center,
    HomogeneityVariant, RowColFunction,
};
use crate::network::ValuedNetwork;
use crate::partition::Partition;

/// The blockmodeling family a model evaluates under.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Approach {
    Binary,
    Valued { m: f64 },
    HomogeneitySumSquares,
    HomogeneityAbsoluteDeviations,
}

impl Approach {
    pub fn tag(&self) -> &'static str {
        match self {
            Approach::Binary => "binary",
            Approach::Valued { .. } => "valued",
            Approach::HomogeneitySumSquares => "ss",
            Approach::HomogeneityAbsoluteDeviations => "ad",
        }
    }

    pub fn is_homogeneity(&self) -> bool {
        matches!(
            self,
            Approach::HomogeneitySumSquares | Approach::HomogeneityAbsoluteDeviations
        )
    }
}

/// Allowed ideal types: one global set, or one set per image position for a
/// pre-specified blockmodel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum AllowedBlocks {
    Global(Vec<BlockType>),
    PerCell(Vec<Vec<Vec<BlockType>>>),
}

impl AllowedBlocks {
    pub fn global(types: &[BlockType]) -> Self {
        AllowedBlocks::Global(types.to_vec())
    }

    fn at(&self, i: usize, j: usize) -> &[BlockType] {
        match self {
            AllowedBlocks::Global(v) => v,
            AllowedBlocks::PerCell(m) => &m[i][j],
        }
    }
}

/// A complete model: approach, allowed types, row/column function, optional
/// pre-specified centers, normalization and diagonal handling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub approach: Approach,
    pub allowed: AllowedBlocks,
    pub f: RowColFunction,
    /// Pre-specified centers for homogeneity com blocks, per image position.
    pub centers: Option<Vec<Vec<Center>>>,
    /// Divide each block inconsistency by its counted cell count.
    pub normalize: bool,
    /// Explicit diagonal policy; `None` derives it from the network
    /// (`Ignore` when loops are irrelevant, `TableVariant` otherwise).
    pub diagonal_policy: Option<DiagonalPolicy>,
    /// Tolerance when collecting co-minimal types per block (0 = exact).
    pub tie_epsilon: f64,
}

impl ModelSpec {
    pub fn new(approach: Approach, allowed: AllowedBlocks, f: RowColFunction) -> Self {
        Self {
            approach,
            allowed,
            f,
            centers: None,
            normalize: false,
            diagonal_policy: None,
            tie_epsilon: 0.0,
        }
    }

    pub fn with_policy(mut self, policy: DiagonalPolicy) -> Self {
        self.diagonal_policy = Some(policy);
        self
    }

    pub fn with_normalize(mut self, normalize: bool) -> Self {
        self.normalize = normalize;
        self
    }

    pub fn with_centers(mut self, centers: Vec<Vec<Center>>) -> Self {
        self.centers = Some(centers);
        self
    }

    pub fn effective_policy(&self, net: &ValuedNetwork) -> DiagonalPolicy {
        self.diagonal_policy.unwrap_or(if net.diagonal_relevant() {
            DiagonalPolicy::TableVariant
        } else {
            DiagonalPolicy::Ignore
        })
    }

    /// Check internal consistency and fit to a network; returns the
    /// non-fatal warnings (e.g. a non-max-dominating `f` in valued regular
    /// blocks, which forfeits the binary special case).
    pub fn validate(&self, net: &ValuedNetwork, k: usize) -> Result<Vec<String>> {
        let mut warnings = Vec::new();
        match self.approach {
            Approach::Binary => {
                if !net.is_binary() {
                    return Err(Error::Config(
                        "binary approach requires all cell values in {0, 1}; slice the network first"
                            .into(),
                    ));
                }
            }
            Approach::Valued { m } => {
                if m.is_nan() || m <= 0.0 {
                    return Err(Error::InvalidM(m));
                }
                if net.min_value() < 0.0 {
                    return Err(Error::Config(
                        "valued approach cannot handle negative tie values".into(),
                    ));
                }
            }
            _ => {}
        }
        let sets: Vec<(usize, usize, &[BlockType])> = match &self.allowed {
            AllowedBlocks::Global(v) => vec![(0, 0, v.as_slice())],
            AllowedBlocks::PerCell(m) => {
                if m.len() != k || m.iter().any(|row| row.len() != k) {
                    return Err(Error::AllowedMatrixMismatch {
                        got: m.len(),
                        got2: m.first().map(|r| r.len()).unwrap_or(0),
                        k,
                    });
                }
                m.iter()
                    .enumerate()
                    .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, s)| (i, j, s.as_slice())))
                    .collect()
            }
        };
        let mut uses_regular = false;
        for (i, j, set) in sets {
            if set.is_empty() {
                return Err(Error::EmptyAllowedSet { row: i, col: j });
            }
            for &ty in set {
                if self.approach.is_homogeneity() && !ty.supports_homogeneity() {
                    return Err(Error::UnsupportedBlockType {
                        ty,
                        approach: "homogeneity",
                    });
                }
                if matches!(
                    ty,
                    BlockType::RowRegular | BlockType::ColRegular | BlockType::Regular
                ) {
                    uses_regular = true;
                }
            }
        }
        if let Some(centers) = &self.centers {
            if centers.len() != k || centers.iter().any(|row| row.len() != k) {
                return Err(Error::CenterMatrixMismatch {
                    got: centers.len(),
                    k,
                });
            }
            for row in centers {
                for c in row {
                    c.validate()?;
                }
            }
        }
        if matches!(self.approach, Approach::Valued { .. }) && uses_regular && !self.f.dominates_max()
        {
            warnings.push(format!(
                "f = {} does not dominate the maximum; valued regular blocks are no longer \
                 compatible with complete blocks and the binary special case is lost",
                self.f.tag()
            ));
        }
        Ok(warnings)
    }

    fn center_at(&self, i: usize, j: usize) -> Center {
        self.centers
            .as_ref()
            .map(|c| c[i][j])
            .unwrap_or(Center::Fitted)
    }
}

/// The evaluation of one partition: total, winning image, per-block
/// inconsistencies and per-block co-minimal type sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub partition: Partition,
    pub total: f64,
    pub image: Vec<Vec<BlockType>>,
    pub block_inconsistencies: Vec<Vec<f64>>,
    pub ties: Vec<Vec<Vec<BlockType>>>,
}

/// Fit one block against a set of allowed types: the minimum inconsistency,
/// the winning type (ties broken by catalog precedence) and all co-minimal
/// types.
pub fn block_fit(
    block: &BlockView,
    allowed: &[BlockType],
    spec: &ModelSpec,
) -> Result<(f64, BlockType, Vec<BlockType>)> {
    if allowed.is_empty() {
        return Err(Error::EmptyAllowedSet { row: 0, col: 0 });
    }
    let cells = block.cells();
    let mut evaluated = Vec::with_capacity(allowed.len());
    for &ty in allowed {
        let delta = delta_for(&cells, ty, spec, Center::Fitted, true)?;
        let delta = if spec.normalize {
            normalize_cells(delta, &cells)
        } else {
            delta
        };
        evaluated.push((ty, delta));
    }
    Ok(pick_winner(&mut evaluated, spec.tie_epsilon))
}

fn pick_winner(
    evaluated: &mut [(BlockType, f64)],
    tie_epsilon: f64,
) -> (f64, BlockType, Vec<BlockType>) {
    evaluated.sort_by_key(|a| a.0);
    let min = evaluated
        .iter()
        .map(|&(_, d)| d)
        .fold(f64::INFINITY, f64::min);
    let ties: Vec<BlockType> = evaluated
        .iter()
        .filter(|&&(_, d)| d <= min + tie_epsilon)
        .map(|&(ty, _)| ty)
        .collect();
    (min, ties[0], ties)
}

fn delta_for(
    cells: &Cells<'_>,
    ty: BlockType,
    spec: &ModelSpec,
    center: Center,
    validate: bool,
) -> Result<f64> {
    match spec.approach {
        Approach::Binary => {
            if validate {
                crate::inconsistency::check_binary_cells(cells)?;
            }
            Ok(binary_delta(cells, ty))
        }
        Approach::Valued { m } => {
            if validate {
                if m.is_nan() || m <= 0.0 {
                    return Err(Error::InvalidM(m));
                }
                crate::inconsistency::check_nonnegative_cells(cells)?;
            }
            Ok(valued_delta(cells, ty, m, spec.f))
        }
        Approach::HomogeneitySumSquares => {
            if !ty.supports_homogeneity() {
                return Err(Error::UnsupportedBlockType {
                    ty,
                    approach: "homogeneity",
                });
            }
            Ok(homogeneity_delta(
                cells,
                ty,
                HomogeneityVariant::SumSquares,
                spec.f,
                center,
            ))
        }
        Approach::HomogeneityAbsoluteDeviations => {
            if !ty.supports_homogeneity() {
                return Err(Error::UnsupportedBlockType {
                    ty,
                    approach: "homogeneity",
                });
            }
            Ok(homogeneity_delta(
                cells,
                ty,
                HomogeneityVariant::AbsoluteDeviations,
                spec.f,
                center,
            ))
        }
    }
}

/// Evaluate every block of a partition and assemble the [`FitResult`].
///
/// Blocks are evaluated in row-major image order and the total is their sum
/// in that order, so repeated evaluations are bit-identical.
pub fn total_inconsistency(
    net: &ValuedNetwork,
    partition: &Partition,
    spec: &ModelSpec,
) -> Result<FitResult> {
    if partition.n() != net.n() {
        return Err(Error::PartitionSizeMismatch {
            expected: net.n(),
            got: partition.n(),
        });
    }
    spec.validate(net, partition.k())?;
    let mut eval = Evaluator::new(net, spec, partition.k())?;
    Ok(eval.fit(partition))
}

/// Reusable evaluation engine: validates once, then evaluates partitions
/// without re-checking the network. Scratch buffers are reused across calls.
pub(crate) struct Evaluator<'a> {
    net: &'a ValuedNetwork,
    spec: &'a ModelSpec,
    policy: DiagonalPolicy,
    k: usize,
    buf: Vec<f64>,
    pub clusters: Vec<Vec<usize>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(net: &'a ValuedNetwork, spec: &'a ModelSpec, k: usize) -> Result<Self> {
        spec.validate(net, k)?;
        Ok(Self {
            net,
            spec,
            policy: spec.effective_policy(net),
            k,
            buf: Vec::with_capacity(net.n() * net.n()),
            clusters: vec![Vec::new(); k],
        })
    }

    pub fn set_assignment(&mut self, assignment: &[usize]) {
        for c in &mut self.clusters {
            c.clear();
        }
        for (unit, &c) in assignment.iter().enumerate() {
            self.clusters[c].push(unit);
        }
    }

    /// Minimum inconsistency of block (i, j) over its allowed types, using
    /// the current cluster lists.
    pub fn block_delta(&mut self, i: usize, j: usize) -> f64 {
        let rows = &self.clusters[i];
        let cols = &self.clusters[j];
        self.buf.clear();
        for &r in rows {
            for &c in cols {
                self.buf.push(self.net.value(r, c));
            }
        }
        let cells = Cells {
            values: &self.buf,
            n_r: rows.len(),
            n_c: cols.len(),
            is_diagonal: i == j,
            policy: self.policy,
        };
        let mut best = f64::INFINITY;
        for &ty in self.spec.allowed.at(i, j) {
            let delta = delta_for(&cells, ty, self.spec, self.spec.center_at(i, j), false)
                .expect("validated in Evaluator::new");
            let delta = if self.spec.normalize {
                normalize_cells(delta, &cells)
            } else {
                delta
            };
            if delta < best {
                best = delta;
            }
        }
        best
    }

    /// Total over all k^2 blocks for an assignment, in row-major order.
    pub fn total_for_assignment(&mut self, assignment: &[usize]) -> f64 {
        self.set_assignment(assignment);
        let mut total = 0.0;
        for i in 0..self.k {
            for j in 0..self.k {
                total += self.block_delta(i, j);
            }
        }
        total
    }

    /// Full evaluation with image, per-block table and tie sets.
    pub fn fit(&mut self, partition: &Partition) -> FitResult {
        self.set_assignment(partition.assignment());
        let k = self.k;
        let mut image = vec![vec![BlockType::Null; k]; k];
        let mut table = vec![vec![0.0; k]; k];
        let mut ties = vec![vec![Vec::new(); k]; k];
        let mut total = 0.0;
        for i in 0..k {
            for j in 0..k {
                let rows_len = self.clusters[i].len();
                let cols_len = self.clusters[j].len();
                self.buf.clear();
                for &r in &self.clusters[i] {
                    for &c in &self.clusters[j] {
                        self.buf.push(self.net.value(r, c));
                    }
                }
                let cells = Cells {
                    values: &self.buf,
                    n_r: rows_len,
                    n_c: cols_len,
                    is_diagonal: i == j,
                    policy: self.policy,
                };
                let mut evaluated = Vec::new();
                for &ty in self.spec.allowed.at(i, j) {
                    let delta = delta_for(&cells, ty, self.spec, self.spec.center_at(i, j), false)
                        .expect("validated in Evaluator::new");
                    let delta = if self.spec.normalize {
                        normalize_cells(delta, &cells)
                    } else {
                        delta
                    };
                    evaluated.push((ty, delta));
                }
                let (delta, winner, tie_set) = pick_winner(&mut evaluated, self.spec.tie_epsilon);
                image[i][j] = winner;
                table[i][j] = delta;
                ties[i][j] = tie_set;
                total += delta;
            }
        }
        FitResult {
            partition: partition.clone(),
            total,
            image,
            block_inconsistencies: table,
            ties,
        }
    }
}
