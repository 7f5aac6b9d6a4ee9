//! Exact matchings, brute-force maximum cut, and matching-polytope
//! membership by explicit star/odd-set constraint checks.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use serde::{Deserialize, Serialize};

/// Bitmask DP over vertex subsets; memory is O(2^n (k+1)).
pub const MATCHING_N_CAP: usize = 18;
pub const CUT_N_CAP: usize = 24;

/// Slack used when comparing floating-point constraint values.
pub const VIOLATION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matching {
    /// Indices into the graph's edge list, ascending.
    pub edges: Vec<usize>,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutResult {
    /// The side containing vertex 0, ascending.
    pub side: Vec<usize>,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PolytopeViolationKind {
    Star(usize),
    OddSet(Vec<usize>),
    NonNegative(usize),
    Cardinality,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolytopeViolation {
    pub kind: PolytopeViolationKind,
    pub lhs: f64,
    pub rhs: f64,
}

/// Suffix DP tables: `best[j][mask]` = maximum weight of a matching on the
/// vertices outside `mask` using at most `j` edges.
struct MatchingDp {
    best: Vec<Vec<f64>>,
    n: usize,
}

impl MatchingDp {
    fn solve(g: &WeightedGraph, k_cap: usize) -> Self {
        let n = g.n();
        let full = 1usize << n;
        let edges = g.edges();
        let mut best = vec![vec![0.0f64; full]; k_cap + 1];
        // iterate masks descending so higher (more covered) states are ready
        for j in 1..=k_cap {
            for mask in (0..full).rev() {
                let free = !mask & (full - 1);
                if free == 0 {
                    continue;
                }
                let u = free.trailing_zeros() as usize;
                // u stays unmatched
                let mut val = best[j][mask | 1 << u];
                for e in edges.iter() {
                    let (a, b) = (e.u, e.v);
                    let other = if a == u {
                        b
                    } else if b == u {
                        a
                    } else {
                        continue;
                    };
                    if mask >> other & 1 == 0 {
                        let cand = e.w + best[j - 1][mask | 1 << u | 1 << other];
                        if cand > val {
                            val = cand;
                        }
                    }
                }
                best[j][mask] = val;
            }
        }
        Self { best, n }
    }

    fn value(&self, mask: usize, budget: usize) -> f64 {
        self.best[budget.min(self.best.len() - 1)][mask]
    }

    /// Optimal matching with the lexicographically smallest edge-index set:
    /// scan edges in order and keep an edge exactly when some optimum
    /// contains it together with everything already kept.
    fn reconstruct(&self, g: &WeightedGraph, budget: usize) -> Matching {
        let mut mask = 0usize;
        let mut left = budget;
        let mut picked = Vec::new();
        let mut weight = 0.0;
        let target = self.value(0, budget);
        for (i, e) in g.edges().iter().enumerate() {
            if left == 0 {
                break;
            }
            if mask >> e.u & 1 == 1 || mask >> e.v & 1 == 1 {
                continue;
            }
            let with = weight + e.w + self.value(mask | 1 << e.u | 1 << e.v, left - 1);
            if with >= target - 1e-9 {
                picked.push(i);
                weight += e.w;
                mask |= 1 << e.u | 1 << e.v;
                left -= 1;
            }
        }
        let _ = self.n;
        Matching {
            edges: picked,
            weight,
        }
    }
}

/// Exact maximum-weight matching; with `max_edges = Some(k)`, the maximum
/// over matchings of at most k edges (M_k). Ties break toward the
/// lexicographically smallest edge-index set.
pub fn max_weight_matching(g: &WeightedGraph, max_edges: Option<usize>) -> Result<Matching> {
    let n = g.n();
    if n > MATCHING_N_CAP {
        return Err(Error::ResourceCap(format!(
            "matching DP handles n <= {MATCHING_N_CAP}, got {n}"
        )));
    }
    let k_cap = max_edges.unwrap_or(n / 2).min(n / 2);
    let dp = MatchingDp::solve(g, k_cap);
    Ok(dp.reconstruct(g, k_cap))
}

/// M_k for every 0 <= k <= floor(n/2) in one DP sweep.
pub fn matching_weights_by_cardinality(g: &WeightedGraph) -> Result<Vec<f64>> {
    let n = g.n();
    if n > MATCHING_N_CAP {
        return Err(Error::ResourceCap(format!(
            "matching DP handles n <= {MATCHING_N_CAP}, got {n}"
        )));
    }
    let dp = MatchingDp::solve(g, n / 2);
    Ok((0..=n / 2).map(|k| dp.value(0, k)).collect())
}

pub fn has_perfect_matching(g: &WeightedGraph) -> bool {
    if !g.n().is_multiple_of(2) {
        return false;
    }
    if g.n() == 0 {
        return true;
    }
    // unit weights: perfect iff the max matching covers everything
    let unit = WeightedGraph::unweighted(
        g.n(),
        &g.edges().iter().map(|e| (e.u, e.v)).collect::<Vec<_>>(),
    )
    .expect("same topology");
    match max_weight_matching(&unit, None) {
        Ok(m) => m.edges.len() == g.n() / 2,
        Err(_) => false,
    }
}

/// Every matching of `g`, as ascending edge-index lists (includes the empty
/// matching). Exponential; used by the audits and tests.
pub fn enumerate_matchings(g: &WeightedGraph) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let edges = g.edges();
    fn rec(
        start: usize,
        used: u64,
        cur: &mut Vec<usize>,
        edges: &[crate::graph::Edge],
        out: &mut Vec<Vec<usize>>,
    ) {
        for i in start..edges.len() {
            let e = &edges[i];
            if used >> e.u & 1 == 0 && used >> e.v & 1 == 0 {
                cur.push(i);
                out.push(cur.clone());
                rec(i + 1, used | 1 << e.u | 1 << e.v, cur, edges, out);
                cur.pop();
            }
        }
    }
    rec(0, 0, &mut Vec::new(), edges, &mut out);
    out
}

/// Exact maximum cut over all 2^(n-1) bipartitions (vertex 0 pinned).
/// Ties break toward the lexicographically smallest side set.
pub fn max_cut(g: &WeightedGraph) -> Result<CutResult> {
    let n = g.n();
    if n > CUT_N_CAP {
        return Err(Error::ResourceCap(format!(
            "cut scan handles n <= {CUT_N_CAP}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(CutResult {
            side: vec![],
            weight: 0.0,
        });
    }
    let edges = g.edges();
    let mut best_w = -1.0f64;
    let mut best_side: u64 = 0;
    for rest in 0u64..(1 << (n - 1)) {
        let side = (rest << 1) | 1; // vertex 0 in S
        let w: f64 = edges
            .iter()
            .filter(|e| (side >> e.u & 1) != (side >> e.v & 1))
            .map(|e| e.w)
            .sum();
        if w > best_w + 1e-12 || (w > best_w - 1e-12 && lex_smaller(side, best_side)) {
            if w > best_w {
                best_w = w;
            }
            best_side = side;
        }
    }
    Ok(CutResult {
        side: (0..n).filter(|&v| best_side >> v & 1 == 1).collect(),
        weight: best_w.max(0.0),
    })
}

/// Compare vertex sets as ascending sequences.
fn lex_smaller(a: u64, b: u64) -> bool {
    if b == 0 {
        return false;
    }
    let (mut x, mut y) = (a, b);
    while x != 0 && y != 0 {
        let (va, vb) = (x.trailing_zeros(), y.trailing_zeros());
        if va != vb {
            return va < vb;
        }
        x &= x - 1;
        y &= y - 1;
    }
    x == 0 && y != 0
}

/// Check z against the matching-LP constraint family: non-negativity, star
/// constraints, the optional cardinality cap, then odd-set constraints by
/// increasing subset size (lexicographic within a size). Returns the first
/// violation found, or None when feasible.
pub fn matching_polytope_membership(
    g: &WeightedGraph,
    z: &[f64],
    k_cap: Option<usize>,
) -> Result<Option<PolytopeViolation>> {
    let n = g.n();
    if z.len() != g.m() {
        return Err(Error::InvalidArgument(format!(
            "vector has {} entries for {} edges",
            z.len(),
            g.m()
        )));
    }
    if z.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("non-finite entry in z".into()));
    }
    if n > 16 {
        return Err(Error::ResourceCap(format!(
            "odd-set enumeration handles n <= 16, got {n}"
        )));
    }
    for (i, &x) in z.iter().enumerate() {
        if x < -VIOLATION_SLACK {
            return Ok(Some(PolytopeViolation {
                kind: PolytopeViolationKind::NonNegative(i),
                lhs: -x,
                rhs: 0.0,
            }));
        }
    }
    for v in 0..n {
        let s: f64 = g.incident_edges(v).iter().map(|&i| z[i]).sum();
        if s > 1.0 + VIOLATION_SLACK {
            return Ok(Some(PolytopeViolation {
                kind: PolytopeViolationKind::Star(v),
                lhs: s,
                rhs: 1.0,
            }));
        }
    }
    if let Some(k) = k_cap {
        let s: f64 = z.iter().sum();
        if s > k as f64 + VIOLATION_SLACK {
            return Ok(Some(PolytopeViolation {
                kind: PolytopeViolationKind::Cardinality,
                lhs: s,
                rhs: k as f64,
            }));
        }
    }
    // odd subsets by size, lexicographic inside each size
    let edges = g.edges();
    let mut size = 3;
    while size <= n {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let mask: u64 = subset.iter().fold(0, |m, &v| m | 1 << v);
            let s: f64 = edges
                .iter()
                .enumerate()
                .filter(|(_, e)| mask >> e.u & 1 == 1 && mask >> e.v & 1 == 1)
                .map(|(i, _)| z[i])
                .sum();
            let rhs = ((size - 1) / 2) as f64;
            if s > rhs + VIOLATION_SLACK {
                return Ok(Some(PolytopeViolation {
                    kind: PolytopeViolationKind::OddSet(subset.clone()),
                    lhs: s,
                    rhs,
                }));
            }
            // next combination
            let mut i = size;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if subset[i] != i + n - size {
                    subset[i] += 1;
                    for j in (i + 1)..size {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    subset.clear();
                    break;
                }
            }
            if subset.is_empty() {
                break;
            }
        }
        size += 2;
    }
    Ok(None)
}
