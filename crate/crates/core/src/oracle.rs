//! Separation oracle for the matching-augmented constraint family: given
//! per-edge energy variables g in [0, 2], either certify that the excess
//! z = g - 1 (on the edges where g > 1) sits inside the matching polytope
//! of that subgraph, or return a violated constraint that every quantum
//! state satisfies.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::matching::{self, VIOLATION_SLACK};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CandidatePoint {
    /// One entry per edge of the graph, each in [0, 2].
    pub g: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ConstraintKind {
    /// Odd vertex subset S: sum of g over F(S) <= max matching size + |F(S)|.
    OddSet(Vec<usize>),
    /// Vertex star: sum of g over the F-edges at i <= 1 + deg_F(i).
    Star(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolatedConstraint {
    pub kind: ConstraintKind,
    /// Edge indices (into the input graph's edge list) appearing in the
    /// constraint.
    pub support: Vec<usize>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum OracleOutcome {
    Feasible,
    Violated(ViolatedConstraint),
}

fn check_point(g: &WeightedGraph, pt: &CandidatePoint) -> Result<()> {
    if pt.g.len() != g.m() {
        return Err(Error::InvalidArgument(format!(
            "candidate has {} entries for {} edges",
            pt.g.len(),
            g.m()
        )));
    }
    if let Some(x) =
        pt.g.iter()
            .find(|x| !x.is_finite() || **x < -VIOLATION_SLACK || **x > 2.0 + VIOLATION_SLACK)
    {
        return Err(Error::Precondition(format!("entry {x} outside [0, 2]")));
    }
    Ok(())
}

/// The separation oracle. Star constraints are checked before odd sets;
/// odd sets go by increasing size, lexicographic inside a size, so the
/// returned constraint is deterministic.
pub fn separate(g: &WeightedGraph, pt: &CandidatePoint) -> Result<OracleOutcome> {
    let n = g.n();
    if n > 16 {
        return Err(Error::ResourceCap(format!(
            "odd-set enumeration handles n <= 16, got {n}"
        )));
    }
    check_point(g, pt)?;

    // the excess subgraph H = (V, F)
    let f_edges: Vec<usize> = (0..g.m()).filter(|&i| pt.g[i] > 1.0).collect();
    let z: Vec<f64> = f_edges.iter().map(|&i| pt.g[i] - 1.0).collect();

    // star constraints
    for v in 0..n {
        let at_v: Vec<usize> = f_edges
            .iter()
            .copied()
            .filter(|&i| g.edges()[i].u == v || g.edges()[i].v == v)
            .collect();
        let zsum: f64 = at_v.iter().map(|&i| pt.g[i] - 1.0).sum();
        if zsum > 1.0 + VIOLATION_SLACK {
            let lhs: f64 = at_v.iter().map(|&i| pt.g[i]).sum();
            let rhs = 1.0 + at_v.len() as f64;
            return Ok(OracleOutcome::Violated(ViolatedConstraint {
                kind: ConstraintKind::Star(v),
                support: at_v,
                lhs,
                rhs,
            }));
        }
    }

    // odd-set constraints on H, by subset size then lexicographic order
    let mut size = 3;
    while size <= n {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let mask: u64 = subset.iter().fold(0, |m, &v| m | 1 << v);
            let inside: Vec<usize> = f_edges
                .iter()
                .copied()
                .filter(|&i| {
                    let e = &g.edges()[i];
                    mask >> e.u & 1 == 1 && mask >> e.v & 1 == 1
                })
                .collect();
            let zsum: f64 = inside.iter().map(|&i| pt.g[i] - 1.0).sum();
            if zsum > ((size - 1) / 2) as f64 + VIOLATION_SLACK {
                let pairs: Vec<(usize, usize)> = inside
                    .iter()
                    .map(|&i| (g.edges()[i].u, g.edges()[i].v))
                    .collect();
                let sub = WeightedGraph::unweighted(n, &pairs).expect("subset of a simple graph");
                let max_size = matching::max_weight_matching(&sub, None)?.edges.len();
                let lhs: f64 = inside.iter().map(|&i| pt.g[i]).sum();
                let rhs = (max_size + inside.len()) as f64;
                return Ok(OracleOutcome::Violated(ViolatedConstraint {
                    kind: ConstraintKind::OddSet(subset.clone()),
                    support: inside,
                    lhs,
                    rhs,
                }));
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
        size += 2;
    }
    let _ = z;
    Ok(OracleOutcome::Feasible)
}

fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let size = subset.len();
    let mut i = size;
    while i > 0 {
        i -= 1;
        if subset[i] != i + n - size {
            subset[i] += 1;
            for j in (i + 1)..size {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Audit a returned constraint against every matching of the graph: with
/// g = mu + 1 on the support, the constraint must hold for each matching
/// incidence vector mu. True iff the constraint is valid.
pub fn audit_constraint(g: &WeightedGraph, outcome: &OracleOutcome) -> bool {
    let OracleOutcome::Violated(c) = outcome else {
        return false;
    };
    if c.lhs <= c.rhs + VIOLATION_SLACK {
        return false;
    }
    for matching in matching::enumerate_matchings(g) {
        let lhs: f64 = c
            .support
            .iter()
            .map(|&i| if matching.contains(&i) { 2.0 } else { 1.0 })
            .sum();
        if lhs > c.rhs + VIOLATION_SLACK {
            return false;
        }
    }
    true
}

/// The faster single-constraint variant: checks only the weighted total
/// sum_e w_e g_e <= M(G) + W(G). Returns the (lhs, rhs) pair when violated;
/// passing this check does not certify feasibility.
pub fn separate_fast(g: &WeightedGraph, pt: &CandidatePoint) -> Result<Option<(f64, f64)>> {
    check_point(g, pt)?;
    let lhs: f64 = g.edges().iter().zip(&pt.g).map(|(e, &x)| e.w * x).sum();
    let rhs = g.total_weight() + matching::max_weight_matching(g, None)?.weight;
    Ok(if lhs > rhs + VIOLATION_SLACK {
        Some((lhs, rhs))
    } else {
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphFamily};

    fn triangle() -> WeightedGraph {
        generate(&GraphFamily::Complete { n: 3 }).unwrap()
    }

    #[test]
    fn triangle_star_violation() {
        let out = separate(
            &triangle(),
            &CandidatePoint {
                g: vec![1.6, 1.6, 1.6],
            },
        )
        .unwrap();
        match &out {
            OracleOutcome::Violated(c) => {
                assert_eq!(c.kind, ConstraintKind::Star(0));
                assert!((c.lhs - 3.2).abs() < 1e-12);
                assert!((c.rhs - 3.0).abs() < 1e-12);
            }
            OracleOutcome::Feasible => panic!("expected violation"),
        }
        assert!(audit_constraint(&triangle(), &out));
    }

    #[test]
    fn triangle_feasible_points() {
        for g in [vec![1.5, 0.5, 0.5], vec![0.0, 0.0, 0.0]] {
            assert_eq!(
                separate(&triangle(), &CandidatePoint { g }).unwrap(),
                OracleOutcome::Feasible
            );
        }
    }

    #[test]
    fn odd_set_violation_on_c5() {
        // all five edges slightly above 1: stars stay <= 1 but V itself
        // (|S| = 5, capacity 2) overflows
        let c5 = generate(&GraphFamily::Cycle { n: 5 }).unwrap();
        let out = separate(&c5, &CandidatePoint { g: vec![1.45; 5] }).unwrap();
        match &out {
            OracleOutcome::Violated(c) => {
                assert_eq!(c.kind, ConstraintKind::OddSet(vec![0, 1, 2, 3, 4]));
                // max matching in the excess subgraph has 2 edges
                assert!((c.rhs - 7.0).abs() < 1e-12);
            }
            OracleOutcome::Feasible => panic!("expected violation"),
        }
        assert!(audit_constraint(&c5, &out));
    }

    #[test]
    fn corrupted_constraint_fails_audit() {
        let out = separate(
            &triangle(),
            &CandidatePoint {
                g: vec![1.6, 1.6, 1.6],
            },
        )
        .unwrap();
        let OracleOutcome::Violated(mut c) = out else {
            panic!()
        };
        c.rhs -= 1.0;
        assert!(!audit_constraint(&triangle(), &OracleOutcome::Violated(c)));
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(separate(
            &triangle(),
            &CandidatePoint {
                g: vec![2.5, 0.0, 0.0]
            }
        )
        .is_err());
        assert!(separate(&triangle(), &CandidatePoint { g: vec![0.0, 0.0] }).is_err());
    }

    #[test]
    fn fast_path() {
        let k2 = generate(&GraphFamily::Complete { n: 2 }).unwrap();
        assert!(separate_fast(&k2, &CandidatePoint { g: vec![2.0] })
            .unwrap()
            .is_none());
        let k3 = triangle();
        // sum w g = 6 > W + M = 4
        let v = separate_fast(
            &k3,
            &CandidatePoint {
                g: vec![2.0, 2.0, 2.0],
            },
        )
        .unwrap();
        assert_eq!(v, Some((6.0, 4.0)));
    }
}
