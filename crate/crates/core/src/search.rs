//! Direct optimization of the criterion over partitions: multi-start
//! steepest-descent local search with move/exchange neighborhoods, plus an
//! exhaustive oracle for small instances.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::criterion::{Evaluator, FitResult, ModelSpec};
use crate::error::{Error, Result};
use crate::network::ValuedNetwork;
use crate::partition::{count_partitions, for_each_partition, Partition};

/// Default cap on the number of partitions exhaustive search will enumerate.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 5_000_000;

/// Neighborhood explored by one descent step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Neighborhood {
    /// Relocate one unit to another cluster.
    Moves,
    /// Relocations plus exchanges of two units across clusters.
    MovesAndSwaps,
}

/// Configuration of the multi-start local search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub k: usize,
    pub restarts: usize,
    pub seed: u64,
    pub neighborhood: Neighborhood,
    pub max_iterations: usize,
    pub collect_all_optima: bool,
    /// Relative tolerance when grouping totals as co-optimal.
    pub optimum_epsilon: f64,
}

impl SearchConfig {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            restarts: 100,
            seed: 0,
            neighborhood: Neighborhood::MovesAndSwaps,
            max_iterations: 10_000,
            collect_all_optima: true,
            optimum_epsilon: 1e-9,
        }
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts.max(1);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Outcome of a search: the best fit, every co-optimal partition found, and
/// bookkeeping about the run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchResult {
    pub best: FitResult,
    /// Distinct canonical partitions whose total is within the optimum
    /// epsilon of the best, sorted.
    pub optima: Vec<Partition>,
    pub restarts_reaching_best: usize,
    /// Number of candidate evaluations performed.
    pub evaluations: u64,
    /// Final (total, partition) per restart; empty for exhaustive search.
    pub restart_finals: Vec<(f64, Partition)>,
}

fn within_eps(total: f64, best: f64, eps: f64) -> bool {
    total <= best + eps * best.abs().max(1.0)
}

/// Multi-start steepest-descent search for a minimum-inconsistency partition.
///
/// Each restart descends from a seeded random start (or from `start` on the
/// first restart) by the best strict improvement in the neighborhood until a
/// local minimum. Deterministic for a fixed seed.
pub fn local_search(
    net: &ValuedNetwork,
    spec: &ModelSpec,
    config: &SearchConfig,
    start: Option<&Partition>,
) -> Result<SearchResult> {
    let n = net.n();
    let k = config.k;
    if k == 0 {
        return Err(Error::ZeroClusters);
    }
    if k > n {
        return Err(Error::TooManyClusters { k, n });
    }
    if let Some(p) = start {
        if p.n() != n {
            return Err(Error::InfeasibleStart(format!(
                "start has {} units, network has {}",
                p.n(),
                n
            )));
        }
        if p.k() != k {
            return Err(Error::InfeasibleStart(format!(
                "start has {} clusters, expected {}",
                p.k(),
                k
            )));
        }
    }
    let mut eval = Evaluator::new(net, spec, k)?;
    let restarts = config.restarts.max(1);
    let mut evaluations = 0u64;
    let mut finals: Vec<(f64, Partition)> = Vec::with_capacity(restarts);

    for restart in 0..restarts {
        let assignment = match (restart, start) {
            (0, Some(p)) => p.assignment().to_vec(),
            _ => {
                let mut rng = restart_rng(config.seed, restart as u64);
                random_start(n, k, &mut rng)
            }
        };
        let (total, partition) = descend(&mut eval, assignment, config, &mut evaluations);
        finals.push((total, partition));
    }

    let (best_total, best_partition) = finals
        .iter()
        .min_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .unwrap()
                .then_with(|| a.1.cmp(&b.1))
        })
        .map(|(t, p)| (*t, p.clone()))
        .expect("at least one restart");

    let mut optima: Vec<Partition> = Vec::new();
    if config.collect_all_optima {
        for (t, p) in &finals {
            if within_eps(*t, best_total, config.optimum_epsilon) {
                optima.push(p.clone());
            }
        }
        optima.sort();
        optima.dedup();
    } else {
        optima.push(best_partition.clone());
    }
    let restarts_reaching_best = finals
        .iter()
        .filter(|(t, _)| within_eps(*t, best_total, config.optimum_epsilon))
        .count();

    let best = eval.fit(&best_partition);
    Ok(SearchResult {
        best,
        optima,
        restarts_reaching_best,
        evaluations,
        restart_finals: finals,
    })
}

fn restart_rng(seed: u64, restart: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add((restart + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

/// Random feasible start: shuffle units, deal the first k as cluster seeds,
/// assign the remainder uniformly.
fn random_start(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut units: Vec<usize> = (0..n).collect();
    units.shuffle(rng);
    let mut assignment = vec![0usize; n];
    for (c, &u) in units.iter().take(k).enumerate() {
        assignment[u] = c;
    }
    for &u in units.iter().skip(k) {
        assignment[u] = rng.random_range(0..k);
    }
    assignment
}

/// Steepest descent from one start; returns the local-minimum total and its
/// canonical partition.
fn descend(
    eval: &mut Evaluator<'_>,
    mut assignment: Vec<usize>,
    config: &SearchConfig,
    evaluations: &mut u64,
) -> (f64, Partition) {
    let n = assignment.len();
    let k = config.k;
    let mut cluster_sizes = vec![0usize; k];
    for &c in &assignment {
        cluster_sizes[c] += 1;
    }

    eval.set_assignment(&assignment);
    let mut deltas = vec![0.0f64; k * k];
    for i in 0..k {
        for j in 0..k {
            deltas[i * k + j] = eval.block_delta(i, j);
        }
    }
    let mut total = sum_deltas(&deltas);
    *evaluations += 1;

    // scratch for candidate block deltas: (block index, new delta)
    let mut patch: Vec<(usize, f64)> = Vec::with_capacity(4 * k);

    for _iter in 0..config.max_iterations {
        let mut best_improvement: Option<(f64, Move)> = None;

        // relocations
        for (u, &a) in assignment.iter().enumerate() {
            if cluster_sizes[a] == 1 {
                continue; // would empty a cluster
            }
            for b in 0..k {
                if b == a {
                    continue;
                }
                let mv = Move::Relocate { unit: u, from: a, to: b };
                let cand = candidate_total(eval, &deltas, k, &mv, &mut patch);
                *evaluations += 1;
                if cand < total
                    && best_improvement
                        .as_ref()
                        .map(|(bt, _)| cand < *bt)
                        .unwrap_or(true)
                {
                    best_improvement = Some((cand, mv));
                }
            }
        }

        // exchanges
        if config.neighborhood == Neighborhood::MovesAndSwaps {
            for u in 0..n {
                for v in (u + 1)..n {
                    let (a, b) = (assignment[u], assignment[v]);
                    if a == b {
                        continue;
                    }
                    let mv = Move::Swap { u, v, a, b };
                    let cand = candidate_total(eval, &deltas, k, &mv, &mut patch);
                    *evaluations += 1;
                    if cand < total
                        && best_improvement
                            .as_ref()
                            .map(|(bt, _)| cand < *bt)
                            .unwrap_or(true)
                    {
                        best_improvement = Some((cand, mv));
                    }
                }
            }
        }

        match best_improvement {
            None => break,
            Some((cand, mv)) => {
                apply_move(eval, &mut assignment, &mut cluster_sizes, &mv);
                for idx in affected_blocks(k, &mv) {
                    deltas[idx] = eval.block_delta(idx / k, idx % k);
                }
                total = sum_deltas(&deltas);
                debug_assert_eq!(total, cand);
            }
        }
    }

    (
        total,
        Partition::from_assignment(&assignment).expect("nonempty assignment"),
    )
}

#[derive(Debug, Clone, Copy)]
enum Move {
    Relocate { unit: usize, from: usize, to: usize },
    Swap { u: usize, v: usize, a: usize, b: usize },
}

fn move_clusters(mv: &Move) -> (usize, usize) {
    match *mv {
        Move::Relocate { from, to, .. } => (from, to),
        Move::Swap { a, b, .. } => (a, b),
    }
}

fn affected_blocks(k: usize, mv: &Move) -> Vec<usize> {
    let (a, b) = move_clusters(mv);
    let mut out = Vec::with_capacity(4 * k);
    for i in 0..k {
        for j in 0..k {
            if i == a || i == b || j == a || j == b {
                out.push(i * k + j);
            }
        }
    }
    out
}

/// Total after a candidate move, computed by recomputing only the affected
/// blocks and summing the full delta matrix in row-major order, so the
/// result is bit-identical to a full evaluation of the moved partition.
fn candidate_total(
    eval: &mut Evaluator<'_>,
    deltas: &[f64],
    k: usize,
    mv: &Move,
    patch: &mut Vec<(usize, f64)>,
) -> f64 {
    apply_to_clusters(eval, mv);
    patch.clear();
    let (a, b) = move_clusters(mv);
    for i in 0..k {
        for j in 0..k {
            if i == a || i == b || j == a || j == b {
                patch.push((i * k + j, eval.block_delta(i, j)));
            }
        }
    }
    revert_clusters(eval, mv);

    let mut total = 0.0;
    let mut p = 0usize;
    for (idx, &delta) in deltas.iter().enumerate() {
        if p < patch.len() && patch[p].0 == idx {
            total += patch[p].1;
            p += 1;
        } else {
            total += delta;
        }
    }
    total
}

fn apply_to_clusters(eval: &mut Evaluator<'_>, mv: &Move) {
    match *mv {
        Move::Relocate { unit, from, to } => {
            remove_member(&mut eval.clusters[from], unit);
            insert_member(&mut eval.clusters[to], unit);
        }
        Move::Swap { u, v, a, b } => {
            remove_member(&mut eval.clusters[a], u);
            remove_member(&mut eval.clusters[b], v);
            insert_member(&mut eval.clusters[a], v);
            insert_member(&mut eval.clusters[b], u);
        }
    }
}

fn revert_clusters(eval: &mut Evaluator<'_>, mv: &Move) {
    match *mv {
        Move::Relocate { unit, from, to } => {
            remove_member(&mut eval.clusters[to], unit);
            insert_member(&mut eval.clusters[from], unit);
        }
        Move::Swap { u, v, a, b } => {
            remove_member(&mut eval.clusters[a], v);
            remove_member(&mut eval.clusters[b], u);
            insert_member(&mut eval.clusters[a], u);
            insert_member(&mut eval.clusters[b], v);
        }
    }
}

fn apply_move(
    eval: &mut Evaluator<'_>,
    assignment: &mut [usize],
    cluster_sizes: &mut [usize],
    mv: &Move,
) {
    apply_to_clusters(eval, mv);
    match *mv {
        Move::Relocate { unit, from, to } => {
            assignment[unit] = to;
            cluster_sizes[from] -= 1;
            cluster_sizes[to] += 1;
        }
        Move::Swap { u, v, a, b } => {
            assignment[u] = b;
            assignment[v] = a;
        }
    }
}

fn remove_member(members: &mut Vec<usize>, unit: usize) {
    let pos = members.binary_search(&unit).expect("member present");
    members.remove(pos);
}

fn insert_member(members: &mut Vec<usize>, unit: usize) {
    let pos = members.binary_search(&unit).unwrap_err();
    members.insert(pos, unit);
}

fn sum_deltas(deltas: &[f64]) -> f64 {
    let mut total = 0.0;
    for &d in deltas {
        total += d;
    }
    total
}

/// Enumerate every partition of the units into exactly `k` nonempty
/// clusters and return the exact global minimum with all co-optimal
/// partitions.
pub fn exhaustive_search(net: &ValuedNetwork, spec: &ModelSpec, k: usize) -> Result<SearchResult> {
    exhaustive_search_with_budget(net, spec, k, DEFAULT_ENUMERATION_BUDGET)
}

/// [`exhaustive_search`] with an explicit enumeration budget.
pub fn exhaustive_search_with_budget(
    net: &ValuedNetwork,
    spec: &ModelSpec,
    k: usize,
    budget: u128,
) -> Result<SearchResult> {
    let n = net.n();
    if k == 0 {
        return Err(Error::ZeroClusters);
    }
    if k > n {
        return Err(Error::TooManyClusters { k, n });
    }
    let count = count_partitions(n, k);
    if count > budget {
        return Err(Error::BudgetExceeded { count, budget });
    }
    let mut eval = Evaluator::new(net, spec, k)?;
    let eps = 1e-9;
    let mut best_total = f64::INFINITY;
    let mut optima: Vec<(f64, Vec<usize>)> = Vec::new();
    let mut evaluations = 0u64;

    for_each_partition(n, k, |assignment| {
        let total = eval.total_for_assignment(assignment);
        evaluations += 1;
        if total < best_total {
            best_total = total;
            optima.retain(|(t, _)| within_eps(*t, best_total, eps));
        }
        if within_eps(total, best_total, eps) {
            optima.push((total, assignment.to_vec()));
        }
    });

    // the running filter may have kept entries that are no longer within
    // epsilon of the final best
    optima.retain(|(t, _)| within_eps(*t, best_total, eps));
    let mut partitions: Vec<Partition> = optima
        .iter()
        .map(|(_, a)| Partition::from_assignment(a).expect("canonical enumeration"))
        .collect();
    partitions.sort();
    partitions.dedup();

    let best_partition = partitions
        .iter()
        .find(|p| {
            let t = eval.total_for_assignment(p.assignment());
            t <= best_total
        })
        .cloned()
        .unwrap_or_else(|| partitions[0].clone());
    let best = eval.fit(&best_partition);

    Ok(SearchResult {
        best,
        optima: partitions,
        restarts_reaching_best: 1,
        evaluations,
        restart_finals: Vec::new(),
    })
}

/// Summary of a multi-start run: how many distinct local optima were found
/// and how often each was reached.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultistartReport {
    /// Count of distinct final partitions across restarts.
    pub distinct_local_optima: usize,
    /// Number of co-optimal partitions at the best total.
    pub optima_count: usize,
    pub restarts_reaching_best: usize,
    /// Final partitions with the number of restarts that reached each,
    /// largest basin first.
    pub basin_sizes: Vec<(Partition, usize)>,
}

pub fn multistart_report(result: &SearchResult) -> MultistartReport {
    let mut basins: Vec<(Partition, usize)> = Vec::new();
    for (_, p) in &result.restart_finals {
        match basins.iter_mut().find(|(q, _)| q == p) {
            Some((_, c)) => *c += 1,
            None => basins.push((p.clone(), 1)),
        }
    }
    basins.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    MultistartReport {
        distinct_local_optima: basins.len(),
        optima_count: result.optima.len(),
        restarts_reaching_best: result.restarts_reaching_best,
        basin_sizes: basins,
    }
}
