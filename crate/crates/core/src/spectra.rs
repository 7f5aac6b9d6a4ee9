//! Dense symmetric matrices of token graphs and their extremal eigenpairs.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::token::TokenGraph;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatrixKind {
    /// L = D - A
    Laplacian,
    /// Q = D + A
    SignlessLaplacian,
    Adjacency,
}

impl MatrixKind {
    pub fn short(&self) -> &'static str {
        match self {
            MatrixKind::Laplacian => "L",
            MatrixKind::SignlessLaplacian => "Q",
            MatrixKind::Adjacency => "A",
        }
    }
}

/// Extremal eigenpairs of a symmetric matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralResult {
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub v_max: Vec<f64>,
    pub v_min: Vec<f64>,
    pub dimension: usize,
    /// max of ||Mv - lambda v||_inf over both returned pairs
    pub residual: f64,
}

/// Dense symmetric matrix of a token graph.
pub fn assemble(tg: &TokenGraph, kind: MatrixKind) -> DMatrix<f64> {
    let n = tg.vertex_count();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for e in &tg.edges {
        let (a, b) = (e.a as usize, e.b as usize);
        match kind {
            MatrixKind::Laplacian => {
                m[(a, a)] += e.w;
                m[(b, b)] += e.w;
                m[(a, b)] -= e.w;
                m[(b, a)] -= e.w;
            }
            MatrixKind::SignlessLaplacian => {
                m[(a, a)] += e.w;
                m[(b, b)] += e.w;
                m[(a, b)] += e.w;
                m[(b, a)] += e.w;
            }
            MatrixKind::Adjacency => {
                m[(a, b)] += e.w;
                m[(b, a)] += e.w;
            }
        }
    }
    m
}

fn check_symmetric(m: &DMatrix<f64>) -> Result<()> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::InvalidArgument(format!(
            "need a nonempty square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(
            "matrix has non-finite entries".into(),
        ));
    }
    let scale = m.iter().fold(1.0f64, |a, &x| a.max(x.abs()));
    for i in 0..m.nrows() {
        for j in (i + 1)..m.ncols() {
            if (m[(i, j)] - m[(j, i)]).abs() > 1e-12 * scale {
                return Err(Error::InvalidArgument(format!(
                    "matrix is not symmetric at ({i}, {j})"
                )));
            }
        }
    }
    Ok(())
}

fn full_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    // symmetrize to wash out 1e-16-level assembly noise
    let sym = (m + m.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = DMatrix::zeros(m.nrows(), m.ncols());
    for (col, &i) in order.iter().enumerate() {
        vecs.set_column(col, &eig.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// Extremal eigenvalues and unit eigenvectors, with a residual certificate.
/// `tol` is the acceptable absolute eigenvalue error (default 1e-9 in
/// callers); the dense solver lands far below it at desk scale.
pub fn extremal_eigs(m: &DMatrix<f64>, tol: f64) -> Result<SpectralResult> {
    check_symmetric(m)?;
    let (vals, vecs) = full_eigen(m);
    let dim = vals.len();
    let (lambda_min, lambda_max) = (vals[0], vals[dim - 1]);
    let v_min = vecs.column(0).normalize();
    let v_max = vecs.column(dim - 1).normalize();
    let res = |lambda: f64, v: &DVector<f64>| -> f64 { (m * v - v * lambda).amax() };
    let residual = res(lambda_min, &v_min).max(res(lambda_max, &v_max));
    let allowed = (10.0 * tol).max(1e-8 * lambda_max.abs().max(1.0));
    if residual > allowed {
        return Err(Error::InvalidArgument(format!(
            "eigensolver residual {residual:.3e} above {allowed:.3e}"
        )));
    }
    Ok(SpectralResult {
        lambda_max,
        lambda_min,
        v_max: v_max.iter().copied().collect(),
        v_min: v_min.iter().copied().collect(),
        dimension: dim,
        residual,
    })
}

/// Full spectrum with near-equal values merged to their mean, ascending.
pub fn unique_spectrum(m: &DMatrix<f64>, dedup_tol: f64) -> Result<Vec<f64>> {
    check_symmetric(m)?;
    let (vals, _) = full_eigen(m);
    let mut out: Vec<f64> = Vec::new();
    let mut group: Vec<f64> = Vec::new();
    for v in vals {
        if let Some(&last) = group.last() {
            if v - last > dedup_tol {
                out.push(group.iter().sum::<f64>() / group.len() as f64);
                group.clear();
            }
        }
        group.push(v);
    }
    if !group.is_empty() {
        out.push(group.iter().sum::<f64>() / group.len() as f64);
    }
    Ok(out)
}

pub const DEFAULT_EIG_TOL: f64 = 1e-9;
pub const DEFAULT_DEDUP_TOL: f64 = 1e-6;

/// Per-edge quadratic forms x_e = v^T M(F_k(G_e)) v, where G_e keeps only
/// edge e (with its weight in G). Computed by grouping the token edges of
/// F_k(G) by source edge, so the whole vector costs one pass.
pub fn per_edge_energies(
    g: &WeightedGraph,
    k: usize,
    kind: MatrixKind,
    v: &[f64],
) -> Result<Vec<f64>> {
    let tg = TokenGraph::build(g, k)?;
    per_edge_energies_on(&tg, g.m(), kind, v)
}

pub(crate) fn per_edge_energies_on(
    tg: &TokenGraph,
    m: usize,
    kind: MatrixKind,
    v: &[f64],
) -> Result<Vec<f64>> {
    if v.len() != tg.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "vector length {} does not match binomial({}, {}) = {}",
            v.len(),
            tg.base_n,
            tg.k,
            tg.vertex_count()
        )));
    }
    let norm2: f64 = v.iter().map(|x| x * x).sum();
    if (norm2 - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidArgument(format!(
            "vector norm {} is not 1",
            norm2.sqrt()
        )));
    }
    let mut x = vec![0.0f64; m];
    for te in &tg.edges {
        let (va, vb) = (v[te.a as usize], v[te.b as usize]);
        x[te.src as usize] += match kind {
            MatrixKind::Laplacian => te.w * (va - vb) * (va - vb),
            MatrixKind::SignlessLaplacian => te.w * (va + vb) * (va + vb),
            MatrixKind::Adjacency => 2.0 * te.w * va * vb,
        };
    }
    Ok(x)
}

/// Whitespace-separated rows, for eyeballing small matrices.
pub fn dump_matrix(m: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format!("{}", m[(i, j)])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphFamily};

    fn tg(fam: GraphFamily, k: usize) -> TokenGraph {
        TokenGraph::build(&generate(&fam).unwrap(), k).unwrap()
    }

    #[test]
    fn assemble_k2_laplacian_and_signless() {
        let t = tg(GraphFamily::Complete { n: 2 }, 1);
        let l = assemble(&t, MatrixKind::Laplacian);
        assert_eq!(l, DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]));
        let q = assemble(&t, MatrixKind::SignlessLaplacian);
        assert_eq!(q, DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]));
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let t = tg(GraphFamily::Cycle { n: 6 }, 2);
        let l = assemble(&t, MatrixKind::Laplacian);
        for i in 0..l.nrows() {
            assert!(l.row(i).sum().abs() < 1e-12);
        }
        let a = assemble(&t, MatrixKind::Adjacency);
        for i in 0..a.nrows() {
            assert_eq!(a[(i, i)], 0.0);
        }
    }

    #[test]
    fn octahedron_row_sums() {
        let t = tg(GraphFamily::Complete { n: 4 }, 2);
        let a = assemble(&t, MatrixKind::Adjacency);
        assert_eq!(a.nrows(), 6);
        for i in 0..6 {
            assert!((a.row(i).sum() - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn k4_extremal_values() {
        let t1 = tg(GraphFamily::Complete { n: 4 }, 1);
        let r = extremal_eigs(&assemble(&t1, MatrixKind::Laplacian), DEFAULT_EIG_TOL).unwrap();
        assert!((r.lambda_max - 4.0).abs() < 1e-9);
        assert!(r.lambda_min.abs() < 1e-9);

        let t2 = tg(GraphFamily::Complete { n: 4 }, 2);
        let r = extremal_eigs(&assemble(&t2, MatrixKind::Adjacency), DEFAULT_EIG_TOL).unwrap();
        assert!((r.lambda_max - 4.0).abs() < 1e-9);
        assert!((r.lambda_min + 2.0).abs() < 1e-9);
        assert!(r.residual <= 1e-8 * r.lambda_max.abs().max(1.0));
        let norm: f64 = r.v_max.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn one_by_one_zero_matrix() {
        let z = DMatrix::<f64>::zeros(1, 1);
        let r = extremal_eigs(&z, DEFAULT_EIG_TOL).unwrap();
        assert_eq!(r.lambda_max, 0.0);
        assert_eq!(r.lambda_min, 0.0);
    }

    #[test]
    fn rejects_non_finite_and_asymmetric() {
        let m = DMatrix::from_row_slice(2, 2, &[f64::NAN, 0.0, 0.0, 0.0]);
        assert!(extremal_eigs(&m, DEFAULT_EIG_TOL).is_err());
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 2.0, 0.0]);
        assert!(extremal_eigs(&m, DEFAULT_EIG_TOL).is_err());
    }

    #[test]
    fn k4_unique_spectra() {
        let q2 = unique_spectrum(
            &assemble(
                &tg(GraphFamily::Complete { n: 4 }, 2),
                MatrixKind::SignlessLaplacian,
            ),
            DEFAULT_DEDUP_TOL,
        )
        .unwrap();
        let expect = [2.0, 4.0, 8.0];
        assert_eq!(q2.len(), 3);
        for (a, b) in q2.iter().zip(expect) {
            assert!((a - b).abs() < 1e-9);
        }

        let q1 = unique_spectrum(
            &assemble(
                &tg(GraphFamily::Complete { n: 4 }, 1),
                MatrixKind::SignlessLaplacian,
            ),
            DEFAULT_DEDUP_TOL,
        )
        .unwrap();
        assert_eq!(q1.len(), 2);
        assert!((q1[0] - 2.0).abs() < 1e-9 && (q1[1] - 6.0).abs() < 1e-9);

        let a1 = unique_spectrum(
            &assemble(
                &tg(GraphFamily::Complete { n: 4 }, 1),
                MatrixKind::Adjacency,
            ),
            DEFAULT_DEDUP_TOL,
        )
        .unwrap();
        assert_eq!(a1.len(), 2);
        assert!((a1[0] + 1.0).abs() < 1e-9 && (a1[1] - 3.0).abs() < 1e-9);
    }

    #[test]
    fn per_edge_path3_splits_evenly() {
        let p3 = generate(&GraphFamily::Path { n: 3 }).unwrap();
        let t = TokenGraph::build(&p3, 1).unwrap();
        let r = extremal_eigs(&assemble(&t, MatrixKind::Laplacian), DEFAULT_EIG_TOL).unwrap();
        assert!((r.lambda_max - 3.0).abs() < 1e-9);
        let x = per_edge_energies(&p3, 1, MatrixKind::Laplacian, &r.v_max).unwrap();
        assert!((x[0] - 1.5).abs() < 1e-9);
        assert!((x[1] - 1.5).abs() < 1e-9);
    }

    #[test]
    fn per_edge_singlet_saturates_k2() {
        let k2 = generate(&GraphFamily::Complete { n: 2 }).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let x = per_edge_energies(&k2, 1, MatrixKind::Laplacian, &[s, -s]).unwrap();
        assert!((x[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn per_edge_sums_to_quadratic_form() {
        let c5 = generate(&GraphFamily::Cycle { n: 5 }).unwrap();
        let t = TokenGraph::build(&c5, 2).unwrap();
        let r = extremal_eigs(&assemble(&t, MatrixKind::Laplacian), DEFAULT_EIG_TOL).unwrap();
        let x = per_edge_energies(&c5, 2, MatrixKind::Laplacian, &r.v_max).unwrap();
        let total: f64 = x.iter().sum();
        assert!((total - r.lambda_max).abs() < 1e-8);
        assert!((total - 6.24).abs() < 0.01);
    }

    #[test]
    fn per_edge_dimension_mismatch() {
        let c5 = generate(&GraphFamily::Cycle { n: 5 }).unwrap();
        assert!(per_edge_energies(&c5, 2, MatrixKind::Laplacian, &[1.0, 0.0]).is_err());
    }
}
