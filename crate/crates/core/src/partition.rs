//! Partitions of network units into nonempty clusters, in canonical form.
//!
//! The canonical form is a restricted growth string: clusters are numbered
//! by ascending smallest member, so two assignments that differ only by
//! cluster relabeling canonicalize to equal values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An assignment of `n` units into `k` nonempty clusters, stored canonically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    assignment: Vec<usize>,
    k: usize,
}

impl Partition {
    /// Canonicalize an arbitrary assignment. Cluster ids may be any usize
    /// values; `k` becomes the number of distinct ids.
    pub fn from_assignment(raw: &[usize]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let mut relabel: Vec<Option<usize>> = Vec::new();
        let mut assignment = Vec::with_capacity(raw.len());
        let mut next = 0usize;
        for &c in raw {
            if c >= relabel.len() {
                relabel.resize(c + 1, None);
            }
            let id = *relabel[c].get_or_insert_with(|| {
                let id = next;
                next += 1;
                id
            });
            assignment.push(id);
        }
        Ok(Self {
            assignment,
            k: next,
        })
    }

    /// Like [`from_assignment`](Self::from_assignment) but requires exactly
    /// `k` nonempty clusters.
    pub fn from_assignment_with_k(raw: &[usize], k: usize) -> Result<Self> {
        let p = Self::from_assignment(raw)?;
        if p.k != k {
            return Err(Error::ClusterCountMismatch {
                expected: k,
                got: p.k,
            });
        }
        Ok(p)
    }

    /// One cluster per unit.
    pub fn singletons(n: usize) -> Self {
        Self {
            assignment: (0..n).collect(),
            k: n,
        }
    }

    /// All units in a single cluster.
    pub fn whole(n: usize) -> Self {
        Self {
            assignment: vec![0; n],
            k: 1,
        }
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn cluster_of(&self, unit: usize) -> usize {
        self.assignment[unit]
    }

    /// Member lists per cluster, each in ascending unit order.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (unit, &c) in self.assignment.iter().enumerate() {
            out[c].push(unit);
        }
        out
    }

    pub fn cluster_members(&self, c: usize) -> Result<Vec<usize>> {
        if c >= self.k {
            return Err(Error::ClusterOutOfRange { index: c, k: self.k });
        }
        Ok(self
            .assignment
            .iter()
            .enumerate()
            .filter(|&(_, &a)| a == c)
            .map(|(u, _)| u)
            .collect())
    }
}

/// Number of partitions of `n` units into exactly `k` nonempty clusters
/// (the Stirling number of the second kind), via the standard recurrence.
pub fn count_partitions(n: usize, k: usize) -> u128 {
    if k == 0 {
        return if n == 0 { 1 } else { 0 };
    }
    if k > n {
        return 0;
    }
    // s[j] = S(i, j) rolled over i
    let mut s = vec![0u128; k + 1];
    s[1] = 1; // S(1, 1)
    for _i in 2..=n {
        for j in (1..=k).rev() {
            s[j] = (j as u128).saturating_mul(s[j]).saturating_add(s[j - 1]);
        }
    }
    s[k]
}

/// Enumerate every partition of `n` units into exactly `k` nonempty clusters,
/// in canonical (restricted growth string) order. The callback receives the
/// canonical assignment slice; it is reused between calls.
pub fn for_each_partition<F: FnMut(&[usize])>(n: usize, k: usize, mut f: F) {
    if k == 0 || k > n {
        return;
    }
    let mut a = vec![0usize; n];
    rec(&mut a, 1, 0, k, &mut f);

    fn rec<F: FnMut(&[usize])>(a: &mut [usize], pos: usize, prefix_max: usize, k: usize, f: &mut F) {
        let n = a.len();
        if pos == n {
            if prefix_max == k - 1 {
                f(a);
            }
            return;
        }
        let hi = (prefix_max + 1).min(k - 1);
        for v in 0..=hi {
            let new_max = prefix_max.max(v);
            // prune: remaining positions must still allow reaching k-1
            if (k - 1).saturating_sub(new_max) > n - pos - 1 {
                continue;
            }
            a[pos] = v;
            rec(a, pos + 1, new_max, k, f);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalization_is_label_invariant() {
        let a = Partition::from_assignment(&[2, 0, 2, 1, 0]).unwrap();
        let b = Partition::from_assignment(&[0, 1, 0, 2, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.assignment(), &[0, 1, 0, 2, 1]);
        assert_eq!(a.k(), 3);
    }

    #[test]
    fn clusters_ordered_by_smallest_member() {
        let p = Partition::from_assignment(&[5, 5, 9, 5, 9]).unwrap();
        assert_eq!(p.clusters(), vec![vec![0, 1, 3], vec![2, 4]]);
    }

    #[test]
    fn wrong_k_rejected() {
        assert!(Partition::from_assignment_with_k(&[0, 0, 1], 3).is_err());
        assert!(Partition::from_assignment_with_k(&[0, 0, 1], 2).is_ok());
    }

    #[test]
    fn stirling_small_values() {
        assert_eq!(count_partitions(4, 2), 7);
        assert_eq!(count_partitions(13, 3), 261_625);
        assert_eq!(count_partitions(3, 3), 1);
        assert_eq!(count_partitions(3, 1), 1);
        assert_eq!(count_partitions(2, 3), 0);
    }

    #[test]
    fn enumeration_matches_stirling() {
        for n in 1..=8 {
            for k in 1..=n {
                let mut count = 0u128;
                for_each_partition(n, k, |a| {
                    count += 1;
                    // every yielded assignment is canonical with k clusters
                    let p = Partition::from_assignment(a).unwrap();
                    assert_eq!(p.assignment(), a);
                    assert_eq!(p.k(), k);
                });
                assert_eq!(count, count_partitions(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn enumeration_n4_k2_lists_seven() {
        let mut seen = Vec::new();
        for_each_partition(4, 2, |a| seen.push(a.to_vec()));
        assert_eq!(seen.len(), 7);
        seen.dedup();
        assert_eq!(seen.len(), 7);
    }
}
