//! Exact equivalence checks on valued networks: structural equivalence and
//! f-regular equivalence.

use crate::error::{Error, Result};
use crate::inconsistency::RowColFunction;
use crate::network::ValuedNetwork;
use crate::partition::Partition;

/// Structural equivalence of two distinct units: identical ties to every
/// other unit, equal loops, and a symmetric mutual tie.
pub fn check_structural_equivalence(net: &ValuedNetwork, a: usize, b: usize) -> Result<bool> {
    check_structural_equivalence_eps(net, a, b, 0.0)
}

/// Structural equivalence with a tolerance for floating-point data.
pub fn check_structural_equivalence_eps(
    net: &ValuedNetwork,
    a: usize,
    b: usize,
    eps: f64,
) -> Result<bool> {
    let n = net.n();
    if a >= n {
        return Err(Error::UnitOutOfRange { index: a, n });
    }
    if b >= n {
        return Err(Error::UnitOutOfRange { index: b, n });
    }
    if a == b {
        return Err(Error::DegenerateEquivalenceQuery(a));
    }
    let eq = |x: f64, y: f64| (x - y).abs() <= eps;
    for i in 0..n {
        if i == a || i == b {
            continue;
        }
        if !eq(net.value(b, i), net.value(a, i)) || !eq(net.value(i, b), net.value(i, a)) {
            return Ok(false);
        }
    }
    Ok(eq(net.value(b, b), net.value(a, a)) && eq(net.value(a, b), net.value(b, a)))
}

/// f-regular equivalence of a partition: within every cluster, co-clustered
/// units have equal f-summaries of their ties to each cluster, row-wise and
/// column-wise.
///
/// When the network's diagonal is irrelevant, a unit's own loop is excluded
/// from its restricted tie vectors, matching how evaluation ignores the
/// diagonal.
pub fn check_f_regular_equivalence(
    net: &ValuedNetwork,
    partition: &Partition,
    f: RowColFunction,
) -> Result<bool> {
    check_f_regular_equivalence_eps(net, partition, f, 0.0)
}

/// f-regular equivalence with a tolerance for floating-point data.
pub fn check_f_regular_equivalence_eps(
    net: &ValuedNetwork,
    partition: &Partition,
    f: RowColFunction,
    eps: f64,
) -> Result<bool> {
    if partition.n() != net.n() {
        return Err(Error::PartitionSizeMismatch {
            expected: net.n(),
            got: partition.n(),
        });
    }
    let clusters = partition.clusters();
    let skip_loops = !net.diagonal_relevant();
    let row_summary = |unit: usize, target: &[usize]| -> f64 {
        let vals: Vec<f64> = target
            .iter()
            .filter(|&&t| !(skip_loops && t == unit))
            .map(|&t| net.value(unit, t))
            .collect();
        f.apply(&vals)
    };
    let col_summary = |unit: usize, target: &[usize]| -> f64 {
        let vals: Vec<f64> = target
            .iter()
            .filter(|&&t| !(skip_loops && t == unit))
            .map(|&t| net.value(t, unit))
            .collect();
        f.apply(&vals)
    };
    for members in &clusters {
        let first = members[0];
        for target in &clusters {
            let row_ref = row_summary(first, target);
            let col_ref = col_summary(first, target);
            for &u in &members[1..] {
                if (row_summary(u, target) - row_ref).abs() > eps
                    || (col_summary(u, target) - col_ref).abs() > eps
                {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
