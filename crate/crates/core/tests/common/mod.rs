//! Independent oracles shared by the integration suites. Nothing here may
//! call the code paths it checks: Hamiltonians are built from Bell-state
//! projectors over the full 2^n space, and polytope membership is decided
//! by a phase-1 simplex over explicit matching incidence vectors.

#![allow(dead_code)] // each test binary uses its own subset of these oracles

use nalgebra::DMatrix;
use tokenbound::graph::{generate, GraphFamily, WeightDistribution};
use tokenbound::hamiltonian::Problem;
use tokenbound::matching;
use tokenbound::WeightedGraph;

/// 4x4 term matrix from the Bell-projector definitions:
/// QMC = 2|psi-><psi-|, XY = I/2 + |psi-><psi-| - |psi+><psi+|,
/// EPR = 2|phi+><phi+|.
fn bell_term(p: Problem) -> DMatrix<f64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let psi_minus = [0.0, s, -s, 0.0];
    let psi_plus = [0.0, s, s, 0.0];
    let phi_plus = [s, 0.0, 0.0, s];
    let proj = |v: &[f64; 4]| DMatrix::from_fn(4, 4, |i, j| v[i] * v[j]);
    match p {
        Problem::Qmc => proj(&psi_minus) * 2.0,
        Problem::Epr => proj(&phi_plus) * 2.0,
        Problem::Xy => DMatrix::identity(4, 4) * 0.5 + proj(&psi_minus) - proj(&psi_plus),
    }
}

/// Extremal eigenvalues of the full 2^n Hamiltonian, assembled entry by
/// entry from the 4x4 terms.
pub fn pauli_extremes(g: &WeightedGraph, p: Problem) -> (f64, f64) {
    let n = g.n();
    assert!(n <= 12, "brute force oracle is for small n");
    let dim = 1usize << n;
    let term = bell_term(p);
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for e in g.edges() {
        let (i, j, w) = (e.u, e.v, e.w);
        for x in 0..dim {
            let xi = x >> i & 1;
            let xj = x >> j & 1;
            let rest_x = x & !(1 << i) & !(1 << j);
            for (yi, yj) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let val = term[(2 * xi + xj, 2 * yi + yj)];
                if val == 0.0 {
                    continue;
                }
                let y = rest_x | yi << i | yj << j;
                h[(x, y)] += w * val;
            }
        }
    }
    let eig = h.symmetric_eigen();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in eig.eigenvalues.iter() {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

/// Is z a convex combination of matching incidence vectors? Decided by a
/// phase-1 simplex on: sum_l mu_l M_l = z, sum_l mu_l = 1, mu >= 0.
pub fn in_matching_polytope_lp(g: &WeightedGraph, z: &[f64]) -> bool {
    let m = g.m();
    if z.iter().any(|&x| x < -1e-9) {
        return false;
    }
    let matchings = matching::enumerate_matchings(g);
    let cols = matchings.len();
    let rows = m + 1;
    // tableau with artificial basis; minimize the artificial sum
    let mut a = vec![vec![0.0f64; cols + rows]; rows];
    let mut b = vec![0.0f64; rows];
    for (l, mu) in matchings.iter().enumerate() {
        for &e in mu {
            a[e][l] = 1.0;
        }
        a[m][l] = 1.0;
    }
    for (r, bi) in b.iter_mut().enumerate().take(m) {
        *bi = z[r].max(0.0);
    }
    b[m] = 1.0;
    for r in 0..rows {
        a[r][cols + r] = 1.0;
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    // reduced costs for minimizing the artificial variables
    let mut cost = vec![0.0f64; cols + rows];
    for c in cost.iter_mut().skip(cols) {
        *c = 1.0;
    }
    let obj = |basis: &[usize], b: &[f64]| -> f64 {
        basis.iter().zip(b).map(|(&v, &x)| cost[v] * x).sum()
    };
    loop {
        // reduced cost of each column under the current basis
        let mut entering = None;
        for c in 0..cols + rows {
            if basis.contains(&c) {
                continue;
            }
            let mut red = cost[c];
            for r in 0..rows {
                red -= cost[basis[r]] * a[r][c];
            }
            if red < -1e-9 {
                entering = Some(c);
                break; // Bland's rule: first improving column
            }
        }
        let Some(c_in) = entering else {
            return obj(&basis, &b) <= 1e-7;
        };
        // ratio test, Bland tie-break on leaving index
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for r in 0..rows {
            if a[r][c_in] > 1e-9 {
                let ratio = b[r] / a[r][c_in];
                if ratio < best - 1e-12
                    || (ratio < best + 1e-12 && leave.is_some_and(|l| basis[r] < basis[l]))
                {
                    best = ratio;
                    leave = Some(r);
                }
            }
        }
        let Some(r_out) = leave else {
            return false; // unbounded phase 1 cannot happen; treat as infeasible
        };
        // pivot
        let piv = a[r_out][c_in];
        for x in a[r_out].iter_mut() {
            *x /= piv;
        }
        b[r_out] /= piv;
        let pivot_row = a[r_out].clone();
        for r in 0..rows {
            if r != r_out && a[r][c_in].abs() > 1e-12 {
                let f = a[r][c_in];
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
                b[r] -= f * b[r_out];
            }
        }
        basis[r_out] = c_in;
    }
}

pub fn seeded_er(n: usize, seed: u64) -> WeightedGraph {
    let p = {
        let x = seed.wrapping_mul(0x2545f4914f6cdd1d).rotate_left(23);
        0.15 + 0.7 * ((x >> 11) as f64 / (1u64 << 53) as f64)
    };
    generate(&GraphFamily::ErdosRenyi {
        n,
        p,
        weights: WeightDistribution::Uniform01,
        seed,
    })
    .expect("valid family")
}

pub fn seeded_er_unit(n: usize, seed: u64) -> WeightedGraph {
    let p = {
        let x = seed.wrapping_mul(0x9e3779b97f4a7c15).rotate_left(31);
        0.15 + 0.7 * ((x >> 11) as f64 / (1u64 << 53) as f64)
    };
    generate(&GraphFamily::ErdosRenyi {
        n,
        p,
        weights: WeightDistribution::Unit,
        seed,
    })
    .expect("valid family")
}
