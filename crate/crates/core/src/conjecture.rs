//! Conjecture and bound checks over single graphs and graph streams, plus
//! the registry of known counterexample graphs.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::hamiltonian::{self, Extremum, Problem};
use crate::matching;
use crate::spectra::{self, MatrixKind};
use crate::token::TokenGraph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

/// Pass threshold: lhs <= rhs + slack. Wide enough to absorb eigensolver
/// accumulation, narrow enough to keep the smallest genuine violation
/// (about 1.4e-3 on the registry graphs) visible.
pub const PASS_SLACK: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConjectureId {
    /// lambda_max(L(F_k)) <= m + k, unweighted
    LMax,
    /// lambda_max(Q(F_k)) <= m + k, unweighted
    QMax,
    /// lambda_max(A(F_k)) <= (m + k)/2, unweighted
    AMax,
    /// lambda_min(A(F_k)) >= -(m + k)/2, unweighted
    AMin,
    /// lambda_max(Q(F_k)) <= lambda_max(Q(F_{k+1}))
    QMonotonic,
    /// lambda_max(A(F_k)) <= lambda_max(A(F_{k+1}))
    AMonotonic,
    /// lambda_max(L(F_k)) <= W + M_k
    LMaxWeighted,
    QMaxWeighted,
    /// lambda_max(A(F_k)) <= (W + M_k)/2
    AMaxWeighted,
    AMinWeighted,
    /// lambda_max(H^QMC) <= W + M
    QmcWM,
    /// lambda_max(H^EPR) <= W + M
    EprWM,
    /// lambda_max(H^XY) <= W + M/2
    XyMaxBound,
    /// lambda_min(H^XY) >= -M/2
    XyMinBound,
    /// lambda_min(A(F_k)) >= -(C + M_k)/2
    ACutBound,
    /// lambda_max(L(F_k)) <= (W + C)/2 + k; fails on a registry graph
    LCutBoundRefuted,
    /// sum_e w_e c_e <= M for the top QMC eigenvector
    ConcurrenceBound,
    /// lambda_min(A(F_k)) >= lambda_min(A(F_{k+1})); fails on a registry graph
    AMinMonotonicRefuted,
}

impl ConjectureId {
    /// The unweighted spectral-radius conjectures.
    pub fn core() -> Vec<ConjectureId> {
        use ConjectureId::*;
        vec![LMax, QMax, AMax, AMin, QMonotonic, AMonotonic]
    }

    /// The weighted reductions plus Hamiltonian and cut bounds.
    pub fn weighted() -> Vec<ConjectureId> {
        use ConjectureId::*;
        vec![
            LMaxWeighted,
            QMaxWeighted,
            AMaxWeighted,
            AMinWeighted,
            QmcWM,
            EprWM,
            XyMaxBound,
            XyMinBound,
            ACutBound,
            ConcurrenceBound,
        ]
    }

    pub fn refuted() -> Vec<ConjectureId> {
        vec![
            ConjectureId::LCutBoundRefuted,
            ConjectureId::AMinMonotonicRefuted,
        ]
    }

    pub fn all() -> Vec<ConjectureId> {
        let mut v = Self::core();
        v.extend(Self::weighted());
        v
    }

    pub fn requires_unweighted(&self) -> bool {
        use ConjectureId::*;
        matches!(self, LMax | QMax | AMax | AMin | QMonotonic | AMonotonic)
    }

    /// Expected to fail on its registry graph.
    pub fn is_refuted(&self) -> bool {
        matches!(
            self,
            ConjectureId::LCutBoundRefuted | ConjectureId::AMinMonotonicRefuted
        )
    }

    pub fn name(&self) -> &'static str {
        use ConjectureId::*;
        match self {
            LMax => "LMax",
            QMax => "QMax",
            AMax => "AMax",
            AMin => "AMin",
            QMonotonic => "QMonotonic",
            AMonotonic => "AMonotonic",
            LMaxWeighted => "LMaxWeighted",
            QMaxWeighted => "QMaxWeighted",
            AMaxWeighted => "AMaxWeighted",
            AMinWeighted => "AMinWeighted",
            QmcWM => "QmcWM",
            EprWM => "EprWM",
            XyMaxBound => "XyMaxBound",
            XyMinBound => "XyMinBound",
            ACutBound => "ACutBound",
            LCutBoundRefuted => "LCutBound_refuted",
            ConcurrenceBound => "ConcurrenceBound",
            AMinMonotonicRefuted => "AMinMonotonic_refuted",
        }
    }

    pub fn parse(s: &str) -> Option<ConjectureId> {
        use ConjectureId::*;
        let all = [
            LMax,
            QMax,
            AMax,
            AMin,
            QMonotonic,
            AMonotonic,
            LMaxWeighted,
            QMaxWeighted,
            AMaxWeighted,
            AMinWeighted,
            QmcWM,
            EprWM,
            XyMaxBound,
            XyMinBound,
            ACutBound,
            LCutBoundRefuted,
            ConcurrenceBound,
            AMinMonotonicRefuted,
        ];
        all.into_iter().find(|c| c.name().eq_ignore_ascii_case(s))
    }
}

/// One (graph, conjecture, k) evaluation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub conjecture: String,
    #[serde(rename = "graph")]
    pub graph_id: String,
    pub k: Option<usize>,
    pub lhs: f64,
    pub rhs: f64,
    /// rhs - lhs; negative beyond the slack means a violation.
    pub margin: f64,
    pub pass: bool,
}

fn mk_report(
    c: ConjectureId,
    graph_id: &str,
    k: Option<usize>,
    lhs: f64,
    rhs: f64,
) -> ConjectureReport {
    ConjectureReport {
        conjecture: c.name().to_string(),
        graph_id: graph_id.to_string(),
        k,
        lhs,
        rhs,
        margin: rhs - lhs,
        pass: lhs <= rhs + PASS_SLACK,
    }
}

/// Per-graph spectral and combinatorial data shared across conjecture
/// evaluations.
struct GraphData<'a> {
    g: &'a WeightedGraph,
    w: f64,
    m: usize,
    /// (lmax, lmin) of L, Q, A per k = 1..=floor(n/2); index 0 unused
    l: Vec<(f64, f64)>,
    q: Vec<(f64, f64)>,
    a: Vec<(f64, f64)>,
    /// M_k for k = 0..=floor(n/2)
    mk: Vec<f64>,
    cut: Option<f64>,
}

impl<'a> GraphData<'a> {
    fn gather(g: &'a WeightedGraph, need_cut: bool) -> Result<Self> {
        let half = g.n() / 2;
        let mut l = vec![(0.0, 0.0)];
        let mut q = vec![(0.0, 0.0)];
        let mut a = vec![(0.0, 0.0)];
        for k in 1..=half {
            let tg = TokenGraph::build(g, k)?;
            for (kind, store) in [
                (MatrixKind::Laplacian, &mut l),
                (MatrixKind::SignlessLaplacian, &mut q),
                (MatrixKind::Adjacency, &mut a),
            ] {
                let m = spectra::assemble(&tg, kind);
                let r = spectra::extremal_eigs(&m, spectra::DEFAULT_EIG_TOL)?;
                store.push((r.lambda_max, r.lambda_min));
            }
        }
        let mk = matching::matching_weights_by_cardinality(g)?;
        let cut = if need_cut {
            Some(matching::max_cut(g)?.weight)
        } else {
            None
        };
        Ok(Self {
            g,
            w: g.total_weight(),
            m: g.m(),
            l,
            q,
            a,
            mk,
            cut,
        })
    }

    fn half(&self) -> usize {
        self.g.n() / 2
    }

    fn matching_weight(&self) -> f64 {
        *self.mk.last().unwrap()
    }

    fn ham_max(&self, p: Problem) -> f64 {
        match p {
            Problem::Qmc => (1..=self.half()).map(|k| self.l[k].0).fold(0.0, f64::max),
            Problem::Epr => (1..=self.half()).map(|k| self.q[k].0).fold(0.0, f64::max),
            Problem::Xy => {
                let wh = self.w / 2.0;
                (1..=self.half())
                    .map(|k| wh - self.a[k].1)
                    .fold(wh, f64::max)
            }
        }
    }

    fn xy_min(&self) -> f64 {
        let wh = self.w / 2.0;
        (1..=self.half())
            .map(|k| wh - self.a[k].0)
            .fold(wh, f64::min)
    }
}

fn needs_cut(ids: &[ConjectureId]) -> bool {
    ids.iter()
        .any(|c| matches!(c, ConjectureId::ACutBound | ConjectureId::LCutBoundRefuted))
}

/// Evaluate one conjecture on one graph; one report per applicable k.
pub fn check(g: &WeightedGraph, c: ConjectureId, graph_id: &str) -> Result<Vec<ConjectureReport>> {
    check_many(g, &[c], graph_id)
}

/// Evaluate several conjectures sharing the spectral work.
pub fn check_many(
    g: &WeightedGraph,
    ids: &[ConjectureId],
    graph_id: &str,
) -> Result<Vec<ConjectureReport>> {
    for c in ids {
        if c.requires_unweighted() && !g.is_unweighted() {
            return Err(Error::Precondition(format!(
                "{} applies to unweighted graphs only",
                c.name()
            )));
        }
    }
    let data = GraphData::gather(g, needs_cut(ids))?;
    let mut out = Vec::new();
    for &c in ids {
        emit(&data, c, graph_id, &mut out)?;
    }
    Ok(out)
}

fn emit(d: &GraphData, c: ConjectureId, gid: &str, out: &mut Vec<ConjectureReport>) -> Result<()> {
    use ConjectureId::*;
    let half = d.half();
    match c {
        LMax | QMax | AMax | AMin => {
            for k in 1..=half {
                let rhs_full = (d.m + k) as f64;
                let (lhs, rhs) = match c {
                    LMax => (d.l[k].0, rhs_full),
                    QMax => (d.q[k].0, rhs_full),
                    AMax => (d.a[k].0, rhs_full / 2.0),
                    _ => (-d.a[k].1, rhs_full / 2.0),
                };
                out.push(mk_report(c, gid, Some(k), lhs, rhs));
            }
        }
        QMonotonic | AMonotonic => {
            let store = if c == QMonotonic { &d.q } else { &d.a };
            for k in 1..half {
                out.push(mk_report(c, gid, Some(k), store[k].0, store[k + 1].0));
            }
        }
        LMaxWeighted | QMaxWeighted | AMaxWeighted | AMinWeighted => {
            for k in 1..=half {
                let wm = d.w + d.mk[k];
                let (lhs, rhs) = match c {
                    LMaxWeighted => (d.l[k].0, wm),
                    QMaxWeighted => (d.q[k].0, wm),
                    AMaxWeighted => (d.a[k].0, wm / 2.0),
                    _ => (-d.a[k].1, wm / 2.0),
                };
                out.push(mk_report(c, gid, Some(k), lhs, rhs));
            }
        }
        QmcWM => out.push(mk_report(
            c,
            gid,
            None,
            d.ham_max(Problem::Qmc),
            d.w + d.matching_weight(),
        )),
        EprWM => out.push(mk_report(
            c,
            gid,
            None,
            d.ham_max(Problem::Epr),
            d.w + d.matching_weight(),
        )),
        XyMaxBound => out.push(mk_report(
            c,
            gid,
            None,
            d.ham_max(Problem::Xy),
            d.w + d.matching_weight() / 2.0,
        )),
        XyMinBound => {
            // lambda_min >= -M/2, stated as -lambda_min <= M/2
            out.push(mk_report(
                c,
                gid,
                None,
                -d.xy_min(),
                d.matching_weight() / 2.0,
            ));
        }
        ACutBound => {
            let cut = d.cut.expect("cut gathered");
            for k in 1..=half {
                out.push(mk_report(c, gid, Some(k), -d.a[k].1, (cut + d.mk[k]) / 2.0));
            }
        }
        LCutBoundRefuted => {
            let cut = d.cut.expect("cut gathered");
            for k in 1..=half {
                out.push(mk_report(
                    c,
                    gid,
                    Some(k),
                    d.l[k].0,
                    (d.w + cut) / 2.0 + k as f64,
                ));
            }
        }
        ConcurrenceBound => {
            let r = hamiltonian::extremal_energy_with_edges(d.g, Problem::Qmc, Extremum::Max)?;
            let conc = r.concurrence.as_ref().expect("qmc concurrence");
            let lhs: f64 = d.g.edges().iter().zip(conc).map(|(e, &ce)| e.w * ce).sum();
            out.push(mk_report(c, gid, None, lhs, d.matching_weight()));
        }
        AMinMonotonicRefuted => {
            for k in 1..half {
                out.push(mk_report(c, gid, Some(k), d.a[k + 1].1, d.a[k].1));
            }
        }
    }
    Ok(())
}

/// A labeled graph or a parse failure from a stream.
#[derive(Debug, Clone)]
pub enum StreamItem {
    Graph(String, WeightedGraph),
    ParseError { line: usize, message: String },
}

/// Batch result. Violations are sorted by (graph_id, conjecture, k) so the
/// report is identical for every jobs setting.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AggregateReport {
    pub conjectures: Vec<String>,
    #[serde(rename = "graphs")]
    pub total_graphs: usize,
    #[serde(rename = "checks")]
    pub total_checks: usize,
    pub violations: Vec<ConjectureReport>,
    pub min_margin: f64,
    pub parse_errors: Vec<String>,
    pub check_errors: Vec<String>,
    /// Every per-(graph, conjecture, k) row, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_reports: Option<Vec<ConjectureReport>>,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// Run `ids` on every stream graph, in parallel across graphs.
pub fn batch_verify<I>(items: I, ids: &[ConjectureId], jobs: usize) -> AggregateReport
where
    I: IntoIterator<Item = StreamItem>,
{
    batch_verify_opts(items, ids, jobs, false)
}

/// As [`batch_verify`], optionally retaining every per-check row.
pub fn batch_verify_opts<I>(
    items: I,
    ids: &[ConjectureId],
    jobs: usize,
    emit_all: bool,
) -> AggregateReport
where
    I: IntoIterator<Item = StreamItem>,
{
    let start = Instant::now();
    let mut graphs: Vec<(String, WeightedGraph)> = Vec::new();
    let mut parse_errors = Vec::new();
    for item in items {
        match item {
            StreamItem::Graph(id, g) => graphs.push((id, g)),
            StreamItem::ParseError { line, message } => {
                parse_errors.push(format!("line {line}: {message}"));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let per_graph: Vec<std::result::Result<Vec<ConjectureReport>, String>> = pool.install(|| {
        graphs
            .par_iter()
            .map(|(id, g)| check_many(g, ids, id).map_err(|e| format!("{id}: {e}")))
            .collect()
    });

    let mut total_checks = 0usize;
    let mut min_margin = f64::INFINITY;
    let mut violations = Vec::new();
    let mut check_errors = Vec::new();
    let mut all_reports = emit_all.then(Vec::new);
    for res in per_graph {
        match res {
            Ok(reports) => {
                for r in reports {
                    total_checks += 1;
                    if r.margin < min_margin {
                        min_margin = r.margin;
                    }
                    if !r.pass {
                        violations.push(r.clone());
                    }
                    if let Some(all) = all_reports.as_mut() {
                        all.push(r);
                    }
                }
            }
            Err(e) => check_errors.push(e),
        }
    }
    violations
        .sort_by(|a, b| (&a.graph_id, &a.conjecture, a.k).cmp(&(&b.graph_id, &b.conjecture, b.k)));
    AggregateReport {
        conjectures: ids.iter().map(|c| c.name().to_string()).collect(),
        total_graphs: graphs.len(),
        total_checks,
        violations,
        min_margin: if min_margin.is_finite() {
            min_margin
        } else {
            0.0
        },
        parse_errors,
        check_errors,
        all_reports,
        wall_time: start.elapsed(),
    }
}

/// The two explicit counterexample graphs, under their published vertex
/// labelings.
pub fn counterexample_registry() -> Vec<(String, WeightedGraph)> {
    // 8 vertices, 10 edges; min-adjacency monotonicity fails between k=3 and 4
    let d1 = WeightedGraph::unweighted(
        8,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 5),
            (5, 0),
            (0, 4),
            (4, 5),
            (4, 3),
            (1, 7),
            (0, 6),
        ],
    )
    .expect("registry graph");
    // 10 vertices, 20 edges; the Laplacian cut bound fails at k=5
    let d2 = WeightedGraph::unweighted(
        10,
        &[
            (0, 4),
            (0, 5),
            (0, 6),
            (0, 7),
            (1, 4),
            (1, 5),
            (1, 6),
            (1, 7),
            (2, 6),
            (2, 7),
            (2, 8),
            (2, 9),
            (3, 6),
            (3, 7),
            (3, 8),
            (3, 9),
            (4, 8),
            (4, 9),
            (5, 8),
            (5, 9),
        ],
    )
    .expect("registry graph");
    vec![
        ("amin-monotonic-counterexample".to_string(), d1),
        ("laplacian-cut-counterexample".to_string(), d2),
    ]
}
