//! Exhaustive isomorph-free enumeration of simple graphs on up to
//! [`ENUMERATION_N_CAP`] vertices.
//!
//! Canonical form = the adjacency bit string (column-major pair order, the
//! same indexing as graph6) minimized over all n! vertex permutations.
//! Enumeration extends each canonical (n-1)-vertex graph by every possible
//! neighborhood of a new vertex and re-canonicalizes; every isomorphism
//! class on n vertices arises from deleting the last vertex of one of its
//! labelings, so the sweep is exhaustive.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::graph6::pair_index;
use std::collections::HashSet;

/// n! canonicalization is O(n! n^2); 8 and beyond is not desk scale.
pub const ENUMERATION_N_CAP: usize = 7;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn heap(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(perm.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, out);
            if k.is_multiple_of(2) {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut perm, &mut out);
    out
}

/// Minimum adjacency mask over all relabelings.
pub(crate) fn canonical_mask(mask: u64, n: usize, perms: &[Vec<usize>]) -> u64 {
    let mut pairs = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        let bit = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        // invert pair_index
        let mut v = 1;
        while pair_index(0, v + 1) <= bit {
            v += 1;
        }
        let u = bit - pair_index(0, v);
        pairs.push((u, v));
    }
    let mut best = u64::MAX;
    for p in perms {
        let mut m = 0u64;
        for &(u, v) in &pairs {
            let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
            m |= 1 << pair_index(a, b);
        }
        if m < best {
            best = m;
        }
        let _ = n;
    }
    best
}

fn mask_to_graph(mask: u64, n: usize) -> WeightedGraph {
    let mut pairs = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if mask >> pair_index(u, v) & 1 == 1 {
                pairs.push((u, v));
            }
        }
    }
    WeightedGraph::unweighted(n, &pairs).expect("mask encodes a simple graph")
}

/// All canonical adjacency masks on exactly `n` vertices, sorted.
fn canonical_masks(n: usize) -> Vec<u64> {
    let mut level: Vec<u64> = vec![0]; // the single graph on 1 vertex
    for sz in 2..=n {
        let perms = permutations(sz);
        let mut next = HashSet::new();
        for &g in &level {
            // vertex sz-1 attaches to any subset of 0..sz-1
            for nb in 0u64..(1 << (sz - 1)) {
                let mut m = g;
                for u in 0..sz - 1 {
                    if nb >> u & 1 == 1 {
                        m |= 1 << pair_index(u, sz - 1);
                    }
                }
                next.insert(canonical_mask(m, sz, &perms));
            }
        }
        level = next.into_iter().collect();
        level.sort_unstable();
    }
    level
}

/// One representative per isomorphism class of simple graphs on `n` vertices,
/// in canonical-mask order. Orders above the internal cap must come from
/// graph6 streams.
pub fn enumerate_nonisomorphic(n: usize) -> Result<impl Iterator<Item = WeightedGraph>> {
    if n == 0 || n > ENUMERATION_N_CAP {
        return Err(Error::UnsupportedOrder {
            n,
            cap: ENUMERATION_N_CAP,
        });
    }
    Ok(canonical_masks(n)
        .into_iter()
        .map(move |m| mask_to_graph(m, n)))
}

/// Canonical graph6 record of an unweighted graph (n-cap applies).
pub fn canonical_graph6(g: &WeightedGraph) -> Result<String> {
    let n = g.n();
    if n > ENUMERATION_N_CAP {
        return Err(Error::UnsupportedOrder {
            n,
            cap: ENUMERATION_N_CAP,
        });
    }
    let mut mask = 0u64;
    for e in g.edges() {
        mask |= 1 << pair_index(e.u, e.v);
    }
    let canon = canonical_mask(mask, n, &permutations(n));
    crate::graph6::write_graph6(&mask_to_graph(canon, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over every labeled graph; the independent route for the
    /// class counts.
    fn count_by_exhaustion(n: usize) -> usize {
        let perms = permutations(n);
        let bits = n * (n - 1) / 2;
        let mut set = HashSet::new();
        for mask in 0u64..(1 << bits) {
            set.insert(canonical_mask(mask, n, &perms));
        }
        set.len()
    }

    #[test]
    fn counts_match_exhaustive_oracle_small() {
        for (n, expect) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)] {
            assert_eq!(
                enumerate_nonisomorphic(n).unwrap().count(),
                expect,
                "n = {n}"
            );
            assert_eq!(count_by_exhaustion(n), expect, "oracle n = {n}");
        }
    }

    #[test]
    fn counts_match_known_sequence() {
        assert_eq!(enumerate_nonisomorphic(6).unwrap().count(), 156);
        assert_eq!(enumerate_nonisomorphic(7).unwrap().count(), 1044);
    }

    #[test]
    fn pairwise_nonisomorphic() {
        let perms = permutations(5);
        let mut seen = HashSet::new();
        for g in enumerate_nonisomorphic(5).unwrap() {
            let mut mask = 0u64;
            for e in g.edges() {
                mask |= 1 << pair_index(e.u, e.v);
            }
            assert!(seen.insert(canonical_mask(mask, 5, &perms)));
        }
    }

    #[test]
    fn order_cap() {
        assert!(matches!(
            enumerate_nonisomorphic(8),
            Err(crate::error::Error::UnsupportedOrder { n: 8, .. })
        ));
    }
}
