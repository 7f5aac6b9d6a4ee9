//! Weighted simple graphs: the universal input type, structural predicates,
//! deterministic generators, and induced subgraphs.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// An undirected edge `u < v` with a strictly positive weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// A simple graph with positive edge weights on vertices `0..n`.
///
/// The edge list is kept sorted lexicographically by `(u, v)`; that ordering
/// is the canonical edge indexing used by every vector over the edge set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    pub fn new(n: usize, mut edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            if e.u >= e.v || e.v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) violates 0 <= u < v < n with n = {n}",
                    e.u, e.v
                )));
            }
            if e.w <= 0.0 || !e.w.is_finite() {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) has non-positive weight {}",
                    e.u, e.v, e.w
                )));
            }
        }
        edges.sort_by_key(|e| (e.u, e.v));
        if edges
            .windows(2)
            .any(|p| (p[0].u, p[0].v) == (p[1].u, p[1].v))
        {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        Ok(Self { n, edges })
    }

    /// Unweighted constructor: all weights exactly 1.0.
    pub fn unweighted(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            n,
            pairs
                .iter()
                .map(|&(u, v)| Edge {
                    u: u.min(v),
                    v: u.max(v),
                    w: 1.0,
                })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Total edge weight W(G).
    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.w == 1.0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = (u.min(v), u.max(v));
        self.edges
            .binary_search_by_key(&(a, b), |e| (e.u, e.v))
            .is_ok()
    }

    /// Neighbor bitmasks, one `u64` per vertex. Panics past 64 vertices;
    /// callers on that path (matching DP, ear search) are capped well below.
    pub fn neighbor_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask adjacency needs n <= 64");
        let mut adj = vec![0u64; self.n];
        for e in &self.edges {
            adj[e.u] |= 1 << e.v;
            adj[e.v] |= 1 << e.u;
        }
        adj
    }

    /// Sorted adjacency lists (any order).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.u == v {
                    Some(e.v)
                } else if e.v == v {
                    Some(e.u)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Edge indices incident to `v`.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].u == v || self.edges[i].v == v)
            .collect()
    }

    /// FNV-1a hash of the edge list; the stable identity for weighted graphs.
    pub fn content_hash(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        eat(&(self.n as u64).to_le_bytes());
        for e in &self.edges {
            eat(&(e.u as u64).to_le_bytes());
            eat(&(e.v as u64).to_le_bytes());
            eat(&e.w.to_bits().to_le_bytes());
        }
        format!("{h:016x}")
    }

    /// Restriction to `sub` (relabeled 0..|sub|-1 preserving order). Returns the
    /// graph and the relabeling map old -> new.
    pub fn induced_subgraph(&self, sub: &[usize]) -> Result<(WeightedGraph, Vec<usize>)> {
        if sub.is_empty() {
            return Err(Error::InvalidArgument(
                "induced subgraph of empty vertex set".into(),
            ));
        }
        let mut sorted = sub.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != sub.len() {
            return Err(Error::InvalidArgument("duplicate vertex in subset".into()));
        }
        if *sorted.last().unwrap() >= self.n {
            return Err(Error::InvalidArgument(format!(
                "vertex {} out of range (n = {})",
                sorted.last().unwrap(),
                self.n
            )));
        }
        let mut map = vec![usize::MAX; self.n];
        for (new, &old) in sorted.iter().enumerate() {
            map[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| map[e.u] != usize::MAX && map[e.v] != usize::MAX)
            .map(|e| Edge {
                u: map[e.u],
                v: map[e.v],
                w: e.w,
            })
            .collect();
        Ok((WeightedGraph::new(sorted.len(), edges)?, sorted))
    }

    /// Structural predicates used for membership in the biconnected
    /// factor-critical family.
    pub fn classify(&self) -> GraphPredicates {
        GraphPredicates {
            connected: self.is_connected(),
            bipartite: self.is_bipartite(),
            biconnected: self.is_biconnected(),
            factor_critical: self.is_factor_critical(),
            triangle_free: self.is_triangle_free(),
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![-1i8; self.n];
        let adj = self.adjacency();
        for s in 0..self.n {
            if color[s] >= 0 {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &u in &adj[v] {
                    if color[u] < 0 {
                        color[u] = 1 - color[v];
                        stack.push(u);
                    } else if color[u] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Per the definition used here: G - i stays connected for every vertex i.
    pub fn is_biconnected(&self) -> bool {
        if !self.is_connected() {
            return false;
        }
        if self.n <= 2 {
            return true;
        }
        let adj = self.adjacency();
        (0..self.n).all(|drop| {
            let start = (0..self.n).find(|&v| v != drop).unwrap();
            let mut seen = vec![false; self.n];
            seen[drop] = true;
            seen[start] = true;
            let mut stack = vec![start];
            let mut count = 2;
            while let Some(v) = stack.pop() {
                for &u in &adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        count += 1;
                        stack.push(u);
                    }
                }
            }
            count == self.n
        })
    }

    pub fn is_triangle_free(&self) -> bool {
        let adj = self.adjacency();
        // sorted lists: check each edge's endpoint neighborhoods for overlap
        self.edges.iter().all(|e| {
            let (a, b) = (&adj[e.u], &adj[e.v]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => return false,
                }
            }
            true
        })
    }

    /// G - i admits a perfect matching for every i (forces odd order).
    pub fn is_factor_critical(&self) -> bool {
        if self.n.is_multiple_of(2) || self.n > crate::matching::MATCHING_N_CAP {
            return false;
        }
        if self.n == 1 {
            return true;
        }
        (0..self.n).all(|drop| {
            let keep: Vec<usize> = (0..self.n).filter(|&v| v != drop).collect();
            let (sub, _) = self.induced_subgraph(&keep).expect("valid subset");
            crate::matching::has_perfect_matching(&sub)
        })
    }
}

/// Outcome of [`WeightedGraph::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphPredicates {
    pub connected: bool,
    pub bipartite: bool,
    pub biconnected: bool,
    pub factor_critical: bool,
    pub triangle_free: bool,
}

/// Weight law for random generators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum WeightDistribution {
    /// Every weight exactly 1.0.
    Unit,
    /// Uniform on (0, 1).
    Uniform01,
    /// Exponential with the given rate (mean 1/rate).
    Exponential { rate: f64 },
}

impl WeightDistribution {
    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            WeightDistribution::Unit => 1.0,
            WeightDistribution::Uniform01 => {
                // keep weights strictly positive
                loop {
                    let x: f64 = rng.random();
                    if x > 0.0 {
                        return x;
                    }
                }
            }
            WeightDistribution::Exponential { rate } => {
                let u: f64 = rng.random();
                -(1.0 - u).ln() / rate
            }
        }
    }
}

/// Named deterministic families plus seeded Erdős–Rényi graphs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GraphFamily {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// Star with `m` edges (m + 1 vertices, center 0).
    Star {
        m: usize,
    },
    CompleteBipartite {
        a: usize,
        b: usize,
    },
    ErdosRenyi {
        n: usize,
        p: f64,
        weights: WeightDistribution,
        seed: u64,
    },
}

/// Build a member of a graph family. Deterministic kinds ignore randomness;
/// Erdős–Rényi output is reproducible from the seed.
pub fn generate(family: &GraphFamily) -> Result<WeightedGraph> {
    match *family {
        GraphFamily::Path { n } => {
            if n == 0 {
                return Err(Error::InvalidArgument("path needs n >= 1".into()));
            }
            WeightedGraph::unweighted(
                n,
                &(0..n.saturating_sub(1))
                    .map(|i| (i, i + 1))
                    .collect::<Vec<_>>(),
            )
        }
        GraphFamily::Cycle { n } => {
            if n < 3 {
                return Err(Error::InvalidArgument("cycle needs n >= 3".into()));
            }
            let mut pairs: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
            pairs.push((0, n - 1));
            WeightedGraph::unweighted(n, &pairs)
        }
        GraphFamily::Complete { n } => {
            if n == 0 {
                return Err(Error::InvalidArgument("complete graph needs n >= 1".into()));
            }
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .collect();
            WeightedGraph::unweighted(n, &pairs)
        }
        GraphFamily::Star { m } => {
            if m == 0 {
                return Err(Error::InvalidArgument("star needs m >= 1".into()));
            }
            WeightedGraph::unweighted(m + 1, &(1..=m).map(|v| (0, v)).collect::<Vec<_>>())
        }
        GraphFamily::CompleteBipartite { a, b } => {
            if a == 0 || b == 0 {
                return Err(Error::InvalidArgument(
                    "complete bipartite needs a, b >= 1".into(),
                ));
            }
            let pairs: Vec<(usize, usize)> = (0..a)
                .flat_map(|u| (a..a + b).map(move |v| (u, v)))
                .collect();
            WeightedGraph::unweighted(a + b, &pairs)
        }
        GraphFamily::ErdosRenyi {
            n,
            p,
            weights,
            seed,
        } => {
            if n == 0 {
                return Err(Error::InvalidArgument("random graph needs n >= 1".into()));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidArgument(format!(
                    "probability {p} outside [0, 1]"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    let roll: f64 = rng.random();
                    if roll < p {
                        edges.push(Edge {
                            u,
                            v,
                            w: weights.sample(&mut rng),
                        });
                    }
                }
            }
            WeightedGraph::new(n, edges)
        }
    }
}

/// Weighted edge-list text format: first line `n m`, then `m` lines `u v w`.
pub fn parse_edge_list(text: &str) -> Result<WeightedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (ln, header) = lines.next().ok_or_else(|| Error::EdgeListParse {
        line: 1,
        reason: "empty input".into(),
    })?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::EdgeListParse {
            line: ln + 1,
            reason: "bad vertex count".into(),
        })?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::EdgeListParse {
            line: ln + 1,
            reason: "bad edge count".into(),
        })?;
    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        let mut it = line.split_whitespace();
        let mut field = |what: &str| -> Result<&str> {
            it.next().ok_or_else(|| Error::EdgeListParse {
                line: ln + 1,
                reason: format!("missing {what}"),
            })
        };
        let u: usize = field("u")?.parse().map_err(|_| Error::EdgeListParse {
            line: ln + 1,
            reason: "bad u".into(),
        })?;
        let v: usize = field("v")?.parse().map_err(|_| Error::EdgeListParse {
            line: ln + 1,
            reason: "bad v".into(),
        })?;
        let w: f64 = field("w")?.parse().map_err(|_| Error::EdgeListParse {
            line: ln + 1,
            reason: "bad w".into(),
        })?;
        edges.push(Edge {
            u: u.min(v),
            v: u.max(v),
            w,
        });
    }
    if edges.len() != m {
        return Err(Error::EdgeListParse {
            line: 1,
            reason: format!("header announced {m} edges, found {}", edges.len()),
        });
    }
    WeightedGraph::new(n, edges)
}

pub fn write_edge_list(g: &WeightedGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for e in g.edges() {
        out.push_str(&format!("{} {} {}\n", e.u, e.v, e.w));
    }
    out
}
