//! Browser bindings: three JSON-in/JSON-out entry points behind
//! wasm-bindgen, used by the static demo page in `www/`.

use tokenbound::approx;
use tokenbound::conjecture::{self, ConjectureId};
use tokenbound::graph::{generate, GraphFamily, WeightDistribution};
use tokenbound::hamiltonian::{self, Extremum, Problem};
use tokenbound::oracle::{self, CandidatePoint};
use tokenbound::spectra::{self, MatrixKind};
use tokenbound::token::TokenGraph;
use tokenbound::{graph6, WeightedGraph};
use wasm_bindgen::prelude::*;

fn parse_request(json: &str) -> Result<WeightedGraph, String> {
    let v: serde_json::Value = serde_json::from_str(json).map_err(|e| e.to_string())?;
    if let Some(rec) = v.get("graph6").and_then(|x| x.as_str()) {
        return graph6::parse_graph6(rec).map_err(|e| e.to_string());
    }
    let kind = v
        .get("family")
        .and_then(|x| x.as_str())
        .ok_or("need graph6 or family")?;
    let n = v.get("n").and_then(|x| x.as_u64()).unwrap_or(5) as usize;
    let seed = v.get("seed").and_then(|x| x.as_u64()).unwrap_or(0);
    let p = v.get("p").and_then(|x| x.as_f64()).unwrap_or(0.5);
    let fam = match kind {
        "path" => GraphFamily::Path { n },
        "cycle" => GraphFamily::Cycle { n },
        "complete" => GraphFamily::Complete { n },
        "star" => GraphFamily::Star { m: n.max(1) },
        "er" => GraphFamily::ErdosRenyi {
            n,
            p,
            weights: WeightDistribution::Uniform01,
            seed,
        },
        other => return Err(format!("unknown family {other}")),
    };
    generate(&fam).map_err(|e| e.to_string())
}

fn err_json(msg: &str) -> String {
    serde_json::json!({ "error": msg }).to_string()
}

/// Token-graph spectra plus conjecture margins for one graph.
/// Request: {"family":"cycle","n":5} or {"graph6":"C~"}.
#[wasm_bindgen]
pub fn spectra_report(request: &str) -> String {
    let g = match parse_request(request) {
        Ok(g) => g,
        Err(e) => return err_json(&e),
    };
    let mut per_k = Vec::new();
    for k in 1..=g.n() / 2 {
        let tg = match TokenGraph::build(&g, k) {
            Ok(t) => t,
            Err(e) => return err_json(&e.to_string()),
        };
        let mut row = serde_json::json!({
            "k": k,
            "vertices": tg.vertex_count(),
            "edges": tg.edge_count(),
        });
        for kind in [
            MatrixKind::Laplacian,
            MatrixKind::SignlessLaplacian,
            MatrixKind::Adjacency,
        ] {
            let m = spectra::assemble(&tg, kind);
            match spectra::unique_spectrum(&m, spectra::DEFAULT_DEDUP_TOL) {
                Ok(s) => {
                    row[kind.short()] = serde_json::json!(s);
                }
                Err(e) => return err_json(&e.to_string()),
            }
        }
        per_k.push(row);
    }
    let ids = if g.is_unweighted() {
        ConjectureId::all()
    } else {
        ConjectureId::weighted()
    };
    let checks = match conjecture::check_many(&g, &ids, "input") {
        Ok(c) => c,
        Err(e) => return err_json(&e.to_string()),
    };
    serde_json::json!({
        "n": g.n(),
        "m": g.m(),
        "total_weight": g.total_weight(),
        "blocks": per_k,
        "checks": checks,
    })
    .to_string()
}

/// Extremal energies and the ratio certificate for one problem.
/// Request: graph fields plus {"problem":"qmc"}.
#[wasm_bindgen]
pub fn ratio_report(request: &str) -> String {
    let g = match parse_request(request) {
        Ok(g) => g,
        Err(e) => return err_json(&e),
    };
    let v: serde_json::Value = serde_json::from_str(request).unwrap_or_default();
    let p = match v.get("problem").and_then(|x| x.as_str()).unwrap_or("qmc") {
        "qmc" => Problem::Qmc,
        "xy" => Problem::Xy,
        "epr" => Problem::Epr,
        other => return err_json(&format!("unknown problem {other}")),
    };
    let cert = match approx::certified_ratio(&g, p, true) {
        Ok(c) => c,
        Err(e) => return err_json(&e.to_string()),
    };
    let energy = match hamiltonian::extremal_energy_with_edges(&g, p, Extremum::Max) {
        Ok(r) => r,
        Err(e) => return err_json(&e.to_string()),
    };
    serde_json::json!({
        "certificate": cert,
        "k_star": energy.k_star,
        "per_edge": energy.per_edge,
        "concurrence": energy.concurrence,
        "edges": g.edges(),
    })
    .to_string()
}

/// Separation-oracle outcome for a candidate point.
/// Request: graph fields plus {"g":[...]}.
#[wasm_bindgen]
pub fn separate_report(request: &str) -> String {
    let g = match parse_request(request) {
        Ok(g) => g,
        Err(e) => return err_json(&e),
    };
    let v: serde_json::Value = match serde_json::from_str(request) {
        Ok(v) => v,
        Err(e) => return err_json(&e.to_string()),
    };
    let point: Vec<f64> = match v.get("g").and_then(|x| x.as_array()) {
        Some(arr) => arr.iter().filter_map(|x| x.as_f64()).collect(),
        None => return err_json("need a candidate vector g"),
    };
    let pt = CandidatePoint { g: point };
    match oracle::separate(&g, &pt) {
        Ok(out) => {
            let audit = match &out {
                oracle::OracleOutcome::Violated(_) => Some(oracle::audit_constraint(&g, &out)),
                oracle::OracleOutcome::Feasible => None,
            };
            serde_json::json!({
                "outcome": out,
                "audit": audit,
                "edges": g.edges(),
            })
            .to_string()
        }
        Err(e) => err_json(&e.to_string()),
    }
}
