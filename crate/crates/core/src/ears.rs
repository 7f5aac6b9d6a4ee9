//! Odd ear decompositions of biconnected factor-critical graphs, and the
//! rewrite that eliminates every closed ear after the first.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use serde::{Deserialize, Serialize};

/// One ear. Open: `vertices` is a path v0..vL (L = odd edge count), both
/// endpoints in the union of prior ears, interior fresh. Closed: `vertices`
/// is a cycle listed from the attachment vertex, with the wrap edge implied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ear {
    pub vertices: Vec<usize>,
    pub closed: bool,
}

impl Ear {
    pub fn edge_count(&self) -> usize {
        if self.closed {
            self.vertices.len()
        } else {
            self.vertices.len() - 1
        }
    }

    /// Edges as (min, max) pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .vertices
            .windows(2)
            .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
            .collect();
        if self.closed {
            let a = self.vertices[0];
            let b = *self.vertices.last().unwrap();
            out.push((a.min(b), a.max(b)));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EarDecomposition {
    pub ears: Vec<Ear>,
}

impl EarDecomposition {
    pub fn closed_count(&self) -> usize {
        self.ears.iter().filter(|e| e.closed).count()
    }
}

/// Structural invariants: the ears partition E(G), every ear is odd, the
/// first is a cycle, and each later ear is open with endpoints (only) in the
/// union of the prior ears.
pub fn validate(g: &WeightedGraph, d: &EarDecomposition) -> Result<()> {
    use std::collections::HashSet;
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut covered: HashSet<usize> = HashSet::new();
    for (i, ear) in d.ears.iter().enumerate() {
        if ear.edge_count() % 2 == 0 {
            return Err(Error::InvalidArgument(format!("ear {i} has even length")));
        }
        for (u, v) in ear.edges() {
            if !g.has_edge(u, v) {
                return Err(Error::InvalidArgument(format!(
                    "ear {i} uses non-edge ({u}, {v})"
                )));
            }
            if !seen.insert((u, v)) {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) covered twice (ear {i})"
                )));
            }
        }
        let distinct: HashSet<usize> = ear.vertices.iter().copied().collect();
        if distinct.len() != ear.vertices.len() {
            return Err(Error::InvalidArgument(format!("ear {i} repeats a vertex")));
        }
        if i == 0 {
            if !ear.closed {
                return Err(Error::InvalidArgument("first ear must be a cycle".into()));
            }
        } else if ear.closed {
            return Err(Error::InvalidArgument(format!(
                "ear {i} is closed; only the first may be"
            )));
        } else {
            let first = ear.vertices[0];
            let last = *ear.vertices.last().unwrap();
            if !covered.contains(&first) || !covered.contains(&last) {
                return Err(Error::InvalidArgument(format!(
                    "ear {i} endpoint not in prior ears"
                )));
            }
            for &v in &ear.vertices[1..ear.vertices.len() - 1] {
                if covered.contains(&v) {
                    return Err(Error::InvalidArgument(format!(
                        "ear {i} interior vertex {v} already covered"
                    )));
                }
            }
        }
        covered.extend(ear.vertices.iter().copied());
    }
    if seen.len() != g.m() {
        return Err(Error::InvalidArgument(format!(
            "ears cover {} of {} edges",
            seen.len(),
            g.m()
        )));
    }
    Ok(())
}

/// Odd open-ear decomposition: first an odd-ear decomposition found by
/// greedy search with backtracking, then the constructive rewrite that
/// removes every closed ear after the first.
pub fn odd_open_ear_decomposition(g: &WeightedGraph) -> Result<EarDecomposition> {
    let preds = g.classify();
    if !preds.factor_critical {
        return Err(Error::Precondition("graph is not factor-critical".into()));
    }
    if !preds.biconnected {
        return Err(Error::Precondition("graph is not biconnected".into()));
    }
    if g.n() < 3 {
        return Err(Error::Precondition(
            "no odd cycle on fewer than 3 vertices".into(),
        ));
    }
    let mut d = odd_ear_decomposition(g)?;
    eliminate_closed_ears(g, &mut d)?;
    validate(g, &d)?;
    Ok(d)
}

/// Any odd-ear decomposition (closed ears after the first allowed).
pub fn odd_ear_decomposition(g: &WeightedGraph) -> Result<EarDecomposition> {
    let mut used = vec![false; g.m()];
    let mut covered = 0u64;
    let mut ears = Vec::new();
    if search(g, &mut used, &mut covered, &mut ears) {
        Ok(EarDecomposition { ears })
    } else {
        Err(Error::Precondition(
            "no odd-ear decomposition found; graph is not factor-critical".into(),
        ))
    }
}

fn search(g: &WeightedGraph, used: &mut Vec<bool>, covered: &mut u64, ears: &mut Vec<Ear>) -> bool {
    if used.iter().all(|&u| u) {
        return true;
    }
    for cand in candidates(g, used, *covered, ears.is_empty()) {
        let idxs = ear_edge_indices(g, &cand);
        for &i in &idxs {
            used[i] = true;
        }
        let saved = *covered;
        for &v in &cand.vertices {
            *covered |= 1 << v;
        }
        ears.push(cand);
        if search(g, used, covered, ears) {
            return true;
        }
        ears.pop();
        *covered = saved;
        for &i in &idxs {
            used[i] = false;
        }
    }
    false
}

fn ear_edge_indices(g: &WeightedGraph, ear: &Ear) -> Vec<usize> {
    ear.edges()
        .iter()
        .map(|&(u, v)| {
            g.edges()
                .binary_search_by_key(&(u, v), |e| (e.u, e.v))
                .expect("ear edge exists")
        })
        .collect()
}

/// All odd ears addable to the current partial decomposition, shortest
/// first, open before closed at equal length, lexicographic within.
fn candidates(g: &WeightedGraph, used: &[bool], covered: u64, initial: bool) -> Vec<Ear> {
    let adj = g.neighbor_masks();
    let free_edge = |u: usize, v: usize| -> bool {
        g.edges()
            .binary_search_by_key(&(u.min(v), u.max(v)), |e| (e.u, e.v))
            .map(|i| !used[i])
            .unwrap_or(false)
    };
    let mut out = Vec::new();
    let starts: Vec<usize> = if initial {
        (0..g.n()).collect()
    } else {
        (0..g.n()).filter(|&v| covered >> v & 1 == 1).collect()
    };
    // DFS over paths x = p[0], interior outside the covered set, ending
    // either at a covered vertex (open) or back at x (closed)
    for x in starts {
        let mut path = vec![x];
        let mut on_path = 1u64 << x;
        dfs(
            &adj,
            &free_edge,
            covered,
            initial,
            &mut path,
            &mut on_path,
            &mut out,
        );
    }
    if initial {
        // longest base cycle first: covers the most vertices up front
        out.sort_by_key(|e| (std::cmp::Reverse(e.edge_count()), e.vertices.clone()));
    } else {
        out.sort_by_key(|e| (e.edge_count(), e.closed, e.vertices.clone()));
    }
    out.dedup();
    out
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    adj: &[u64],
    free_edge: &dyn Fn(usize, usize) -> bool,
    covered: u64,
    initial: bool,
    path: &mut Vec<usize>,
    on_path: &mut u64,
    out: &mut Vec<Ear>,
) {
    let cur = *path.last().unwrap();
    let x = path[0];
    let mut nb = adj[cur];
    while nb != 0 {
        let next = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        if !free_edge(cur, next) {
            continue;
        }
        if next == x && path.len() >= 3 {
            // closed ear (cycle through x only)
            if path.len() % 2 == 1 {
                out.push(Ear {
                    vertices: path.clone(),
                    closed: true,
                });
            }
            continue;
        }
        if *on_path >> next & 1 == 1 {
            continue;
        }
        if !initial && covered >> next & 1 == 1 {
            // open ear landing on the prior union
            if path.len() % 2 == 1 && !path.is_empty() {
                let mut v = path.clone();
                v.push(next);
                out.push(Ear {
                    vertices: v,
                    closed: false,
                });
            }
            continue;
        }
        if initial && covered >> next & 1 == 1 {
            continue;
        }
        path.push(next);
        *on_path |= 1 << next;
        dfs(adj, free_edge, covered, initial, path, on_path, out);
        path.pop();
        *on_path &= !(1 << next);
    }
}

/// Rewrite closed ears after the first into open ears, back to front.
fn eliminate_closed_ears(g: &WeightedGraph, d: &mut EarDecomposition) -> Result<()> {
    loop {
        let Some(s) = last_closed_after_first(d) else {
            return Ok(());
        };
        let f_verts: u64 = d.ears[..s]
            .iter()
            .flat_map(|e| e.vertices.iter())
            .fold(0, |m, &v| m | 1 << v);
        // hoist ears that never needed to come after the closed ear
        if let Some(j) = (s + 1..d.ears.len()).find(|&j| {
            let e = &d.ears[j];
            !e.closed
                && f_verts >> e.vertices[0] & 1 == 1
                && f_verts >> *e.vertices.last().unwrap() & 1 == 1
        }) {
            let ear = d.ears.remove(j);
            d.ears.insert(s, ear);
            continue;
        }
        let f = (s + 1..d.ears.len())
            .find(|&j| {
                let e = &d.ears[j];
                f_verts >> e.vertices[0] & 1 == 1 || f_verts >> *e.vertices.last().unwrap() & 1 == 1
            })
            .ok_or_else(|| {
                Error::Precondition(
                    "closed ear separated from the rest; graph is not biconnected".into(),
                )
            })?;
        let replacement = rewrite_segment(&d.ears[s..=f], f_verts);
        d.ears.splice(s..=f, replacement);
        let _ = g;
    }
}

fn last_closed_after_first(d: &EarDecomposition) -> Option<usize> {
    (1..d.ears.len()).rev().find(|&i| d.ears[i].closed)
}

/// The constructive rewrite: given the subsequence (C, X_1, ..., O_f) where
/// C is closed with attachment u', every X_i attaches inside the
/// subsequence, and O_f is the first ear with an endpoint v' in the prefix
/// vertex set, produce an equivalent all-open ear list.
fn rewrite_segment(seg: &[Ear], f_verts: u64) -> Vec<Ear> {
    let cycle = &seg[0];
    debug_assert!(cycle.closed);
    let u_prime = cycle.vertices[0];
    let o_f = seg.last().unwrap();
    // orient O_f to start at its prefix endpoint v'
    let mut of_path = o_f.vertices.clone();
    if f_verts >> of_path[0] & 1 != 1 {
        of_path.reverse();
    }
    debug_assert!(f_verts >> of_path[0] & 1 == 1);

    // which ear of the subsequence first contains a vertex as interior
    let interior_home = |v: usize| -> Option<usize> {
        (1..seg.len() - 1).find(|&i| {
            let e = &seg[i];
            e.vertices[1..e.vertices.len() - 1].contains(&v)
        })
    };
    let on_cycle = |v: usize| cycle.vertices.contains(&v);

    // step 1: walk from v' through the chain of ears down to the cycle
    let mut main: Vec<usize> = of_path.clone();
    let mut consumed: Vec<Option<(usize, usize)>> = vec![None; seg.len()]; // ear -> (pos, toward_front)
    let mut cur = *main.last().unwrap();
    while !on_cycle(cur) {
        let i = interior_home(cur).expect("walk vertex lives inside an earlier ear");
        let ear = &seg[i];
        let pos = ear.vertices.iter().position(|&v| v == cur).unwrap();
        let len = ear.vertices.len() - 1; // odd edge count
                                          // pick the even-length side
        let toward_front = pos % 2 == 0;
        if toward_front {
            for j in (0..pos).rev() {
                main.push(ear.vertices[j]);
            }
        } else {
            for j in (pos + 1)..=len {
                main.push(ear.vertices[j]);
            }
        }
        consumed[i] = Some((pos, toward_front as usize));
        cur = *main.last().unwrap();
    }
    // finish along the cycle to u' with even length
    let t_f = cur;
    let cyc = &cycle.vertices;
    let l = cyc.len(); // odd edge count
    let q = cyc.iter().position(|&v| v == t_f).unwrap();
    debug_assert!(q != 0, "walk cannot land on the attachment vertex");
    // descending path t_f -> u' has q edges; ascending has l - q
    let descending_even = q % 2 == 0;
    let mut cycle_leftover: Vec<usize> = Vec::new();
    if descending_even {
        for j in (0..q).rev() {
            main.push(cyc[j]);
        }
        // leftover: t_f ascending to u' (odd)
        cycle_leftover.extend_from_slice(&cyc[q..l]);
        cycle_leftover.push(u_prime);
    } else {
        main.extend_from_slice(&cyc[(q + 1)..l]);
        main.push(u_prime);
        // leftover: t_f descending to u' (odd)
        cycle_leftover.extend((0..=q).rev().map(|j| cyc[j]));
    }

    let mut out = vec![Ear {
        vertices: main,
        closed: false,
    }];
    out.push(Ear {
        vertices: cycle_leftover,
        closed: false,
    });
    // step 3: leftovers of partially walked ears, whole untouched ears
    for (i, ear) in seg.iter().enumerate().skip(1).take(seg.len() - 2) {
        match consumed[i] {
            None => out.push(ear.clone()),
            Some((pos, toward_front)) => {
                let rest: Vec<usize> = if toward_front == 1 {
                    ear.vertices[pos..].to_vec()
                } else {
                    ear.vertices[..=pos].to_vec()
                };
                out.push(Ear {
                    vertices: rest,
                    closed: false,
                });
            }
        }
    }
    out
}
