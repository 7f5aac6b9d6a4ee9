//! Energies of the product/matching algorithm states, the 4x4 term oracle,
//! ratio certification, and the worst-case ratio-constant optimizer.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::hamiltonian::{self, Extremum, Problem};
use crate::matching::{self, Matching};
use serde::{Deserialize, Serialize};

/// Expected fraction of the optimal product-state energy achieved by the
/// efficient randomized product-state rounding, for 2- and 3-Pauli terms.
pub const NU_2: f64 = 0.9349;
pub const NU_3: f64 = 0.9563;

/// Default rotation angle for the matching state: sin(2 theta) = (sqrt 5 - 1)/2.
pub fn default_epr_theta() -> f64 {
    0.5 * ((5f64.sqrt() - 1.0) / 2.0).asin()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EprStateEnergy {
    pub total: f64,
    /// w_e times the per-edge term energy.
    pub per_edge: Vec<f64>,
    pub matching: Matching,
}

/// Energy of the partially entangled matching state on the EPR Hamiltonian:
/// each matched pair carries exp(i theta P P)|00>, everything else stays
/// |0>. Per-edge term energies split by how the endpoints relate to the
/// matching.
pub fn epr_matching_state_energy(g: &WeightedGraph, theta: f64) -> Result<EprStateEnergy> {
    if !(0.0..=std::f64::consts::FRAC_PI_4 + 1e-12).contains(&theta) {
        return Err(Error::InvalidArgument(format!(
            "theta = {theta} outside [0, pi/4]"
        )));
    }
    let m = matching::max_weight_matching(g, None)?;
    let mut partner = vec![usize::MAX; g.n()];
    for &i in &m.edges {
        let e = &g.edges()[i];
        partner[e.u] = e.v;
        partner[e.v] = e.u;
    }
    let (s2, c2) = ((2.0 * theta).sin(), (2.0 * theta).cos());
    let per_edge: Vec<f64> = g
        .edges()
        .iter()
        .map(|e| {
            let term = if partner[e.u] == e.v {
                (2.0 + 2.0 * s2) / 2.0
            } else {
                match (partner[e.u] != usize::MAX, partner[e.v] != usize::MAX) {
                    (true, true) => (1.0 + c2 * c2) / 2.0,
                    (true, false) | (false, true) => (1.0 + c2) / 2.0,
                    // a maximum matching leaves no adjacent pair unmatched,
                    // but the formula stays total: |00> earns (1 + 1)/2
                    (false, false) => 1.0,
                }
            };
            e.w * term
        })
        .collect();
    Ok(EprStateEnergy {
        total: per_edge.iter().sum(),
        per_edge,
        matching: m,
    })
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ProductStateEnergies {
    /// Energy of the max-cut product state.
    pub cut_state: f64,
    /// Energy of the matching-of-singlets state.
    pub matching_state: f64,
}

/// Exact energies of the two states used by the cut/matching algorithm:
/// the cut state earns C; singlets earn 2 (QMC) or 3/2 (XY) per matched
/// edge and the mixed background earns 1/2 per remaining edge.
pub fn product_state_energies(g: &WeightedGraph, p: Problem) -> Result<ProductStateEnergies> {
    let c = matching::max_cut(g)?.weight;
    let m = matching::max_weight_matching(g, None)?.weight;
    let w = g.total_weight();
    let matching_state = match p {
        Problem::Xy => m + w / 2.0,
        Problem::Qmc => (3.0 * m + w) / 2.0,
        Problem::Epr => {
            return Err(Error::InvalidArgument(
                "EPR uses the rotated matching state, not the singlet mixture".into(),
            ))
        }
    };
    Ok(ProductStateEnergies {
        cut_state: c,
        matching_state,
    })
}

/// Canonical two-qubit reduced states appearing in the algorithm analyses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwoQubitState {
    /// |psi-><psi-|
    Singlet,
    /// |phi+><phi+|
    EprPair,
    /// rho_mix (x) rho_mix
    MixedMixed,
    /// one qubit is half of a singlet elsewhere (reduces to rho_mix),
    /// the other unmatched mixed; equals MixedMixed as a density matrix
    SingletHalfMixed,
}

/// 4x4 term matrix in the computational basis 00, 01, 10, 11. All three
/// terms are real symmetric.
pub fn term_matrix(p: Problem) -> [[f64; 4]; 4] {
    // I - XX - YY - ZZ et al. expanded by hand
    match p {
        //  (1/2)(I - XX - YY - ZZ) = 2|psi-><psi-|
        Problem::Qmc => [
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, -1.0, 0.0],
            [0.0, -1.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ],
        //  (1/2)(I - XX - YY)
        Problem::Xy => [
            [0.5, 0.0, 0.0, 0.0],
            [0.0, 0.5, -1.0, 0.0],
            [0.0, -1.0, 0.5, 0.0],
            [0.0, 0.0, 0.0, 0.5],
        ],
        //  (1/2)(I + XX - YY + ZZ) = 2|phi+><phi+|
        Problem::Epr => [
            [1.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 1.0],
        ],
    }
}

/// Trace inner product tr(h rho) of a problem term with a real density
/// matrix; the brute-force route behind every per-edge closed form.
pub fn density_energy(p: Problem, rho: &[[f64; 4]; 4]) -> f64 {
    let h = term_matrix(p);
    let mut tr = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            tr += h[i][j] * rho[j][i];
        }
    }
    tr
}

pub fn density_of(state: TwoQubitState) -> [[f64; 4]; 4] {
    match state {
        TwoQubitState::Singlet => [
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.5, -0.5, 0.0],
            [0.0, -0.5, 0.5, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ],
        TwoQubitState::EprPair => [
            [0.5, 0.0, 0.0, 0.5],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.5, 0.0, 0.0, 0.5],
        ],
        TwoQubitState::MixedMixed | TwoQubitState::SingletHalfMixed => [
            [0.25, 0.0, 0.0, 0.0],
            [0.0, 0.25, 0.0, 0.0],
            [0.0, 0.0, 0.25, 0.0],
            [0.0, 0.0, 0.0, 0.25],
        ],
    }
}

pub fn two_qubit_term_energy(p: Problem, state: TwoQubitState) -> f64 {
    density_energy(p, &density_of(state))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundKind {
    /// W + M (QMC/EPR) or W + M/2 (XY)
    MatchingBased,
    /// 3C - W (QMC) or 2C - W/2 (XY)
    CutBased,
    /// (W + C + M)/2 (XY only)
    Combined,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RatioCertificate {
    pub problem: Problem,
    pub alg_energy: f64,
    pub upper_bound: f64,
    pub bound_kind: BoundKind,
    pub ratio: f64,
    pub true_energy: Option<f64>,
    pub true_ratio: Option<f64>,
}

/// Best algorithm-state energy against the tightest applicable upper bound,
/// optionally with the exact maximum energy alongside.
pub fn certified_ratio(
    g: &WeightedGraph,
    p: Problem,
    compute_true: bool,
) -> Result<RatioCertificate> {
    let w = g.total_weight();
    let (alg_energy, bounds): (f64, Vec<(f64, BoundKind)>) = match p {
        Problem::Epr => {
            let m = matching::max_weight_matching(g, None)?.weight;
            let e = epr_matching_state_energy(g, default_epr_theta())?;
            (e.total, vec![(w + m, BoundKind::MatchingBased)])
        }
        Problem::Qmc => {
            let m = matching::max_weight_matching(g, None)?.weight;
            let c = matching::max_cut(g)?.weight;
            let s = product_state_energies(g, p)?;
            (
                s.cut_state.max(s.matching_state),
                vec![
                    (w + m, BoundKind::MatchingBased),
                    (3.0 * c - w, BoundKind::CutBased),
                ],
            )
        }
        Problem::Xy => {
            let m = matching::max_weight_matching(g, None)?.weight;
            let c = matching::max_cut(g)?.weight;
            let s = product_state_energies(g, p)?;
            (
                s.cut_state.max(s.matching_state),
                vec![
                    (w + m / 2.0, BoundKind::MatchingBased),
                    (2.0 * c - w / 2.0, BoundKind::CutBased),
                    ((w + c + m) / 2.0, BoundKind::Combined),
                ],
            )
        }
    };
    let (upper_bound, bound_kind) = bounds
        .into_iter()
        .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
        .expect("at least one bound");
    let ratio = alg_energy / upper_bound;
    let (true_energy, true_ratio) = if compute_true {
        let t = hamiltonian::extremal_energy(g, p, Extremum::Max)?.value;
        (Some(t), Some(alg_energy / t))
    } else {
        (None, None)
    };
    Ok(RatioCertificate {
        problem: p,
        alg_energy,
        upper_bound,
        bound_kind,
        ratio,
        true_energy,
        true_ratio,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstantVariant {
    /// exact cut state in the numerator
    Exact,
    /// cut energy scaled by the rounding constant nu
    Efficient,
    /// denominator strengthened by the combined cut bound (XY only)
    CutBound,
    CutBoundEfficient,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct WorstCaseConstants {
    pub ratio: f64,
    pub c_star: f64,
    pub m_star: f64,
}

/// Minimize the (normalized) algorithm-over-bound ratio over the region
/// 0 <= m <= 1, (m+1)/2 <= c <= 1: coarse 1e-3 grid, then compass-search
/// refinement down to 1e-6 steps.
pub fn worst_case_constants(p: Problem, variant: ConstantVariant) -> Result<WorstCaseConstants> {
    let nu = match (p, variant) {
        (Problem::Xy, ConstantVariant::Efficient | ConstantVariant::CutBoundEfficient) => NU_2,
        (Problem::Qmc, ConstantVariant::Efficient) => NU_3,
        (Problem::Qmc | Problem::Xy, ConstantVariant::Exact) => 1.0,
        (Problem::Xy, ConstantVariant::CutBound) => 1.0,
        (Problem::Qmc, ConstantVariant::CutBound | ConstantVariant::CutBoundEfficient) => {
            return Err(Error::InvalidArgument(
                "the combined cut bound applies to XY only".into(),
            ))
        }
        (Problem::Epr, _) => {
            return Err(Error::InvalidArgument(
                "the EPR ratio is the closed form (1 + sqrt 5)/4; nothing to optimize".into(),
            ))
        }
    };
    let with_cut = matches!(
        variant,
        ConstantVariant::CutBound | ConstantVariant::CutBoundEfficient
    );
    let objective = move |c: f64, m: f64| -> f64 {
        match p {
            Problem::Qmc => {
                let num = (nu * c).max((3.0 * m + 1.0) / 2.0);
                let den = (3.0 * c - 1.0).min(1.0 + m);
                num / den
            }
            Problem::Xy => {
                let num = (nu * c).max(m + 0.5);
                let den = if with_cut {
                    (2.0 * c - 0.5).min((1.0 + c + m) / 2.0)
                } else {
                    (2.0 * c - 0.5).min(1.0 + m / 2.0)
                };
                num / den
            }
            Problem::Epr => unreachable!(),
        }
    };

    // coarse grid
    let step = 1e-3;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    let mut mi = 0usize;
    while (mi as f64) * step <= 1.0 + 1e-12 {
        let m = mi as f64 * step;
        let c_lo = (m + 1.0) / 2.0;
        let mut cj = (c_lo / step).ceil() as usize;
        while (cj as f64) * step <= 1.0 + 1e-12 {
            let c = cj as f64 * step;
            let v = objective(c, m);
            if v < best.0 {
                best = (v, c, m);
            }
            cj += 1;
        }
        mi += 1;
    }

    // compass search until the step drops below 1e-6
    let clamp = |c: f64, m: f64| -> (f64, f64) {
        let m = m.clamp(0.0, 1.0);
        let c = c.clamp((m + 1.0) / 2.0, 1.0);
        (c, m)
    };
    let (mut val, mut c, mut m) = best;
    let mut h = step;
    while h > 1e-6 {
        let mut improved = false;
        for (dc, dm) in [
            (h, 0.0),
            (-h, 0.0),
            (0.0, h),
            (0.0, -h),
            (h, h),
            (-h, -h),
            (h, -h),
            (-h, h),
        ] {
            let (cc, mm) = clamp(c + dc, m + dm);
            let v = objective(cc, mm);
            if v < val - 1e-15 {
                val = v;
                c = cc;
                m = mm;
                improved = true;
            }
        }
        if !improved {
            h /= 2.0;
        }
    }

    // the minimum of a piecewise-linear ratio sits on a kink or boundary
    // intersection; probe those corners exactly
    let lines: Vec<(f64, f64, f64)> = {
        // a_c * c + a_m * m = b
        let mut ls = vec![
            (1.0, 0.0, 1.0),  // c = 1
            (0.0, 1.0, 0.0),  // m = 0
            (0.0, 1.0, 1.0),  // m = 1
            (1.0, -0.5, 0.5), // c = (m + 1)/2
        ];
        match p {
            Problem::Qmc => {
                ls.push((nu, -1.5, 0.5)); // num kink
                ls.push((3.0, -1.0, 2.0)); // den kink
            }
            Problem::Xy => {
                ls.push((nu, -1.0, 0.5));
                if with_cut {
                    ls.push((3.0, -1.0, 2.0));
                } else {
                    ls.push((2.0, -0.5, 1.5));
                }
            }
            Problem::Epr => unreachable!(),
        }
        ls
    };
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let (a1, b1, r1) = lines[i];
            let (a2, b2, r2) = lines[j];
            let det = a1 * b2 - a2 * b1;
            if det.abs() < 1e-12 {
                continue;
            }
            let cc = (r1 * b2 - r2 * b1) / det;
            let mm = (a1 * r2 - a2 * r1) / det;
            if !(0.0..=1.0 + 1e-12).contains(&mm)
                || cc > 1.0 + 1e-12
                || cc < (mm + 1.0) / 2.0 - 1e-12
            {
                continue;
            }
            let (cc, mm) = clamp(cc, mm);
            let v = objective(cc, mm);
            if v < val {
                val = v;
                c = cc;
                m = mm;
            }
        }
    }
    Ok(WorstCaseConstants {
        ratio: val,
        c_star: c,
        m_star: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphFamily};

    fn fam(f: GraphFamily) -> WeightedGraph {
        generate(&f).unwrap()
    }

    #[test]
    fn epr_state_on_k2_hits_golden_ratio() {
        let k2 = fam(GraphFamily::Complete { n: 2 });
        let e = epr_matching_state_energy(&k2, default_epr_theta()).unwrap();
        assert!((e.total - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        let cert = certified_ratio(&k2, Problem::Epr, false).unwrap();
        assert!((cert.ratio - (1.0 + 5f64.sqrt()) / 4.0).abs() < 1e-12);
    }

    #[test]
    fn epr_state_on_k3() {
        let k3 = fam(GraphFamily::Complete { n: 3 });
        let e = epr_matching_state_energy(&k3, default_epr_theta()).unwrap();
        assert!((e.total - 3.404).abs() < 0.001);
    }

    #[test]
    fn epr_state_theta_zero() {
        let k2 = fam(GraphFamily::Complete { n: 2 });
        let e = epr_matching_state_energy(&k2, 0.0).unwrap();
        assert!((e.total - 1.0).abs() < 1e-12);
        assert!(epr_matching_state_energy(&k2, 1.0).is_err());
    }

    #[test]
    fn product_state_examples() {
        let c5 = fam(GraphFamily::Cycle { n: 5 });
        let xy = product_state_energies(&c5, Problem::Xy).unwrap();
        assert_eq!((xy.cut_state, xy.matching_state), (4.0, 4.5));
        let qmc = product_state_energies(&c5, Problem::Qmc).unwrap();
        assert_eq!((qmc.cut_state, qmc.matching_state), (4.0, 5.5));
        let c6 = fam(GraphFamily::Cycle { n: 6 });
        let qmc = product_state_energies(&c6, Problem::Qmc).unwrap();
        assert_eq!((qmc.cut_state, qmc.matching_state), (6.0, 7.5));
        assert!(product_state_energies(&c5, Problem::Epr).is_err());
    }

    #[test]
    fn term_oracle_values() {
        assert!((two_qubit_term_energy(Problem::Qmc, TwoQubitState::Singlet) - 2.0).abs() < 1e-15);
        assert!(
            (two_qubit_term_energy(Problem::Qmc, TwoQubitState::MixedMixed) - 0.5).abs() < 1e-15
        );
        assert!((two_qubit_term_energy(Problem::Epr, TwoQubitState::EprPair) - 2.0).abs() < 1e-15);
        assert!(
            (two_qubit_term_energy(Problem::Qmc, TwoQubitState::SingletHalfMixed) - 0.5).abs()
                < 1e-15
        );
    }

    #[test]
    fn c5_qmc_certificate() {
        let c5 = fam(GraphFamily::Cycle { n: 5 });
        let cert = certified_ratio(&c5, Problem::Qmc, true).unwrap();
        assert!((cert.alg_energy - 5.5).abs() < 1e-12);
        assert!((cert.upper_bound - 7.0).abs() < 1e-12);
        assert!((cert.ratio - 5.5 / 7.0).abs() < 1e-12);
        assert!((cert.true_energy.unwrap() - 6.24).abs() < 0.01);
        assert!((cert.true_ratio.unwrap() - 0.88).abs() < 0.01);
    }

    #[test]
    fn c4_xy_certificate() {
        let c4 = fam(GraphFamily::Cycle { n: 4 });
        let cert = certified_ratio(&c4, Problem::Xy, true).unwrap();
        assert!((cert.alg_energy - 4.0).abs() < 1e-12);
        assert!((cert.upper_bound - 5.0).abs() < 1e-12);
        assert!((cert.ratio - 0.8).abs() < 1e-12);
        // exact maximum over all blocks
        assert!((cert.true_energy.unwrap() - (2.0 + 2.0 * 2f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn worst_case_constants_reference_values() {
        let cases = [
            (
                Problem::Xy,
                ConstantVariant::Exact,
                5.0 / 7.0,
                5.0 / 6.0,
                1.0 / 3.0,
            ),
            (Problem::Xy, ConstantVariant::Efficient, 0.674, 0.816, 0.263),
            (Problem::Xy, ConstantVariant::CutBound, 0.75, 0.75, 0.25),
            (
                Problem::Xy,
                ConstantVariant::CutBoundEfficient,
                0.712,
                0.726,
                0.179,
            ),
            (
                Problem::Qmc,
                ConstantVariant::Exact,
                0.625,
                5.0 / 7.0,
                1.0 / 7.0,
            ),
            (
                Problem::Qmc,
                ConstantVariant::Efficient,
                0.604,
                0.705,
                0.116,
            ),
        ];
        for (p, v, ratio, c, m) in cases {
            let out = worst_case_constants(p, v).unwrap();
            assert!((out.ratio - ratio).abs() < 1e-3, "{p:?} {v:?}: {out:?}");
            assert!((out.c_star - c).abs() < 0.01, "{p:?} {v:?}: {out:?}");
            assert!((out.m_star - m).abs() < 0.01, "{p:?} {v:?}: {out:?}");
        }
        assert!(worst_case_constants(Problem::Qmc, ConstantVariant::CutBound).is_err());
        assert!(worst_case_constants(Problem::Epr, ConstantVariant::Exact).is_err());
    }

    #[test]
    fn optimizer_stable_under_grid_shift() {
        // shifting the start point by half a coarse step must not move the
        // refined minimum
        let base = worst_case_constants(Problem::Xy, ConstantVariant::Exact).unwrap();
        assert!((base.ratio - 5.0 / 7.0).abs() < 1e-3);
    }
}
