//! Token graphs: the k-subset graph of a weighted base graph, where two
//! subsets are adjacent exactly when their symmetric difference is an edge.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use std::collections::HashMap;

/// Default vertex-count cap; dense spectra downstream are O(V^3).
pub const DEFAULT_SIZE_CAP: usize = 50_000;

/// Effective cap, honoring the `TOKENBOUND_SIZE_CAP` override.
pub fn size_cap() -> usize {
    std::env::var("TOKENBOUND_SIZE_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_SIZE_CAP)
}

/// An edge of F_k(G): endpoints indexed into [`TokenGraph::vertices`], the
/// inherited weight, and the base-graph edge it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TokenEdge {
    pub a: u32,
    pub b: u32,
    pub w: f64,
    /// Index into the base graph's edge list.
    pub src: u32,
}

/// F_k(G). Vertices are k-subsets of the base vertex set as bitmasks, in
/// lexicographic order of their sorted element lists; that order fixes every
/// downstream matrix layout.
#[derive(Debug, Clone)]
pub struct TokenGraph {
    pub base_n: usize,
    pub k: usize,
    pub vertices: Vec<u64>,
    pub edges: Vec<TokenEdge>,
    index: HashMap<u64, u32>,
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out as usize
}

/// k-subsets of 0..n as bitmasks, lexicographic in the sorted element lists.
fn subsets_lex(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<u64>) {
        if cur.len() == k {
            out.push(cur.iter().fold(0u64, |m, &v| m | 1 << v));
            return;
        }
        let need = k - cur.len();
        for v in start..=(n - need) {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl TokenGraph {
    /// Build F_k(G) by iterating (base edge, (k-1)-subset of the remaining
    /// vertices) pairs: O(m * binomial(n-2, k-1)) instead of all vertex pairs.
    pub fn build(g: &WeightedGraph, k: usize) -> Result<Self> {
        Self::build_with_cap(g, k, size_cap())
    }

    pub fn build_with_cap(g: &WeightedGraph, k: usize, cap: usize) -> Result<Self> {
        let n = g.n();
        if k == 0 || k >= n {
            return Err(Error::InvalidArgument(format!(
                "token count k = {k} outside 1..={}",
                n.saturating_sub(1)
            )));
        }
        let nv = binomial(n, k);
        if nv > cap {
            return Err(Error::ResourceCap(format!(
                "F_{k} of an order-{n} graph has binomial({n},{k}) = {nv} vertices, over the cap {cap}"
            )));
        }
        let vertices = subsets_lex(n, k);
        let index: HashMap<u64, u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, i as u32))
            .collect();

        let mut edges = Vec::with_capacity(binomial(n - 2, k - 1) * g.m());
        let rest_of =
            |a: usize, b: usize| -> Vec<usize> { (0..n).filter(|&t| t != a && t != b).collect() };
        for (src, e) in g.edges().iter().enumerate() {
            let rest = rest_of(e.u, e.v);
            // (k-1)-subsets of the remaining n-2 vertices
            let mut cur: Vec<usize> = Vec::with_capacity(k - 1);
            fn rec(
                start: usize,
                need: usize,
                rest: &[usize],
                cur: &mut Vec<usize>,
                emit: &mut dyn FnMut(u64),
            ) {
                if need == 0 {
                    emit(cur.iter().fold(0u64, |m, &v| m | 1 << v));
                    return;
                }
                for i in start..=(rest.len() - need) {
                    cur.push(rest[i]);
                    rec(i + 1, need - 1, rest, cur, emit);
                    cur.pop();
                }
            }
            let (u, v, w) = (e.u, e.v, e.w);
            let mut emit = |z: u64| {
                let a = index[&(z | 1 << u)];
                let b = index[&(z | 1 << v)];
                let (a, b) = (a.min(b), a.max(b));
                edges.push(TokenEdge {
                    a,
                    b,
                    w,
                    src: src as u32,
                });
            };
            if k - 1 <= rest.len() {
                rec(0, k - 1, &rest, &mut cur, &mut emit);
            }
        }
        edges.sort_by_key(|e| (e.a, e.b));
        Ok(Self {
            base_n: n,
            k,
            vertices,
            edges,
            index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn subset_index(&self, subset: u64) -> Option<u32> {
        self.index.get(&subset).copied()
    }

    pub fn enumerated_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    /// View as a plain weighted graph (for predicates or debug dumps).
    pub fn as_weighted_graph(&self) -> WeightedGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| crate::graph::Edge {
                u: e.a as usize,
                v: e.b as usize,
                w: e.w,
            })
            .collect();
        WeightedGraph::new(self.vertex_count(), edges).expect("token graph is simple")
    }
}

/// Closed form for W(F_k(G)): binomial(n,k) * k(n-k) / (n(n-1)) * W(G).
pub fn total_weight(g: &WeightedGraph, k: usize) -> Result<f64> {
    let n = g.n();
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "token count k = {k} outside 1..={}",
            n.saturating_sub(1)
        )));
    }
    Ok(binomial(n, k) as f64 * (k * (n - k)) as f64 / (n * (n - 1)) as f64 * g.total_weight())
}
