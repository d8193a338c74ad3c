//! Perron-weighted distance matrices and the scalar statistics compared by
//! the spectral excess inequalities.

use nalgebra::{DMatrix, DVector};

use crate::graph::{DistanceData, Graph};
use crate::par::Exec;
use crate::poly::PolySequence;
use crate::spectral::PerronWeights;

/// `<M, N> = (1/n) sum_{ij} (M o N)_{ij}`, i.e. `(1/n) tr(M N)` for symmetric matrices.
pub fn matrix_inner(m: &DMatrix<f64>, other: &DMatrix<f64>) -> f64 {
    m.component_mul(other).sum() / m.nrows() as f64
}

#[derive(Clone, Debug)]
pub struct WeightedMatrices {
    /// `J* = alpha alpha^T`.
    pub jstar: DMatrix<f64>,
    /// `A*_i = A_i o J*` for `i = 0..=D`.
    pub astar: Vec<DMatrix<f64>>,
    /// `S*_j = A*_0 + .. + A*_j`.
    pub sstar: Vec<DMatrix<f64>>,
}

impl WeightedMatrices {
    pub fn astar(&self, i: usize) -> DMatrix<f64> {
        self.astar
            .get(i)
            .cloned()
            .unwrap_or_else(|| DMatrix::zeros(self.jstar.nrows(), self.jstar.ncols()))
    }

    /// `S*_j`, equal to `J*` for every `j >= D`.
    pub fn sstar(&self, j: usize) -> &DMatrix<f64> {
        &self.sstar[j.min(self.sstar.len() - 1)]
    }
}

pub fn weighted_matrices(dd: &DistanceData, pw: &PerronWeights) -> WeightedMatrices {
    let a = DVector::from_column_slice(&pw.alpha);
    let jstar = &a * a.transpose();
    let astar: Vec<DMatrix<f64>> = dd
        .distance_matrices()
        .iter()
        .map(|ai| ai.component_mul(&jstar))
        .collect();
    let mut sstar: Vec<DMatrix<f64>> = Vec::with_capacity(astar.len());
    for (j, m) in astar.iter().enumerate() {
        let next = if j == 0 { m.clone() } else { &sstar[j - 1] + m };
        sstar.push(next);
    }
    WeightedMatrices {
        jstar,
        astar,
        sstar,
    }
}

#[derive(Clone, Debug)]
pub struct ExcessStats {
    /// `ball_norms[u][j] = ||rho_{N_j(u)}||^2` for `j = 0..=D`.
    pub ball_norms: Vec<Vec<f64>>,
    /// `sphere_norms[u][i] = ||rho_{Gamma_i(u)}||^2` for `i = 0..=D`.
    pub sphere_norms: Vec<Vec<f64>>,
    /// `H*_{<=j} = n / sum_u (alpha_u^2 / ||rho_{N_j(u)}||^2)`.
    pub harmonic_means: Vec<f64>,
    /// `delta*_i = (1/n) sum_u alpha_u^2 ||rho_{Gamma_i(u)}||^2`.
    pub delta_stars: Vec<f64>,
    /// `p_{>=D}(lambda_0) = n - q_{D-1}(lambda_0)`.
    pub spectral_excess: f64,
    /// `n - H*_{<=D-1}`.
    pub n_minus_harmonic: f64,
    /// `delta*_u = (1/alpha_u) sum_{v ~ u} alpha_v`.
    pub avg_weighted_degree: Vec<f64>,
}

impl ExcessStats {
    pub fn delta_star_d(&self) -> f64 {
        *self.delta_stars.last().unwrap()
    }
}

pub fn excess_stats(
    g: &Graph,
    dd: &DistanceData,
    pw: &PerronWeights,
    seq: &PolySequence,
    exec: Exec,
) -> ExcessStats {
    let n = g.n();
    let nf = n as f64;
    let diam = dd.diameter();
    let alpha = &pw.alpha;

    let per_vertex = exec.map(n, |u| {
        let spheres: Vec<f64> = (0..=diam).map(|i| pw.rho_norm_sq(dd.sphere(u, i))).collect();
        let mut balls = Vec::with_capacity(diam + 1);
        let mut acc = 0.0;
        for s in &spheres {
            acc += s;
            balls.push(acc);
        }
        let degree = g.neighbors(u).iter().map(|&v| alpha[v]).sum::<f64>() / alpha[u];
        (spheres, balls, degree)
    });

    let mut sphere_norms = Vec::with_capacity(n);
    let mut ball_norms = Vec::with_capacity(n);
    let mut avg_weighted_degree = Vec::with_capacity(n);
    for (s, b, d) in per_vertex {
        sphere_norms.push(s);
        ball_norms.push(b);
        avg_weighted_degree.push(d);
    }

    // Ordered sums over u keep the statistics reproducible across policies.
    let harmonic_means: Vec<f64> = (0..=diam)
        .map(|j| {
            let s: f64 = (0..n).map(|u| alpha[u] * alpha[u] / ball_norms[u][j]).sum();
            nf / s
        })
        .collect();
    let delta_stars: Vec<f64> = (0..=diam)
        .map(|i| (0..n).map(|u| alpha[u] * alpha[u] * sphere_norms[u][i]).sum::<f64>() / nf)
        .collect();

    let spectral_excess = nf - seq.q_at_lambda0(diam - 1);
    let n_minus_harmonic = nf - harmonic_means[diam - 1];

    ExcessStats {
        ball_norms,
        sphere_norms,
        harmonic_means,
        delta_stars,
        spectral_excess,
        n_minus_harmonic,
        avg_weighted_degree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poly::{predistance_polynomials, InnerProductContext, Normalization};
    use crate::spectral::{self, SpectralOptions};
    use approx::assert_abs_diff_eq;

    fn compute(g: &Graph) -> (DistanceData, PerronWeights, WeightedMatrices, ExcessStats, f64) {
        let spec = spectral::eigendecompose(g, &SpectralOptions::default()).unwrap();
        let pw = spectral::perron_weights(&spec).unwrap();
        let dd = g.distance_data();
        let seq = predistance_polynomials(&InnerProductContext::global(&spec), Normalization::Global).unwrap();
        let wm = weighted_matrices(&dd, &pw);
        let st = excess_stats(g, &dd, &pw, &seq, Exec::default());
        (dd, pw, wm, st, spec.lambda0())
    }

    #[test]
    fn k23_headline_statistics() {
        let (_, _, wm, st, _) = compute(&fixtures::complete_bipartite(2, 3));
        assert_abs_diff_eq!(st.spectral_excess, 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(st.n_minus_harmonic, 25.0 / 17.0, epsilon = 1e-12);
        assert_abs_diff_eq!(st.harmonic_means[1], 60.0 / 17.0, epsilon = 1e-12);
        assert_abs_diff_eq!(st.delta_star_d(), 35.0 / 24.0, epsilon = 1e-12);
        assert_abs_diff_eq!(wm.astar[2][(0, 1)], 1.25, epsilon = 1e-12);
    }

    #[test]
    fn petersen_excess_equality() {
        let (_, _, wm, st, _) = compute(&fixtures::petersen());
        assert_abs_diff_eq!(st.delta_star_d(), 6.0, epsilon = 1e-10);
        assert_abs_diff_eq!(st.spectral_excess, 6.0, epsilon = 1e-10);
        let dd = fixtures::petersen().distance_data();
        for i in 0..=2 {
            assert!((&wm.astar[i] - dd.distance_matrix(i)).amax() < 1e-12);
        }
    }

    #[test]
    fn weighted_invariants_on_fixtures() {
        for (_, g) in fixtures::bundled() {
            let (dd, pw, wm, st, l0) = compute(&g);
            let n = g.n();
            let diam = dd.diameter();
            let sum = wm.astar.iter().fold(DMatrix::zeros(n, n), |acc, m| acc + m);
            assert!((&sum - &wm.jstar).amax() < 1e-12);
            assert!((wm.sstar(diam) - &wm.jstar).amax() < 1e-12);
            let diag = DMatrix::from_diagonal(&DVector::from_iterator(n, pw.alpha.iter().map(|a| a * a)));
            assert!((&wm.astar[0] - diag).amax() < 1e-15);
            for u in 0..n {
                assert_abs_diff_eq!(st.ball_norms[u][dd.eccentricity(u)], n as f64, epsilon = 1e-9);
                assert_abs_diff_eq!(
                    st.ball_norms[u][diam - 1],
                    n as f64 - st.sphere_norms[u][diam],
                    epsilon = 1e-9
                );
                assert_abs_diff_eq!(st.avg_weighted_degree[u], l0, epsilon = 1e-9);
            }
            let norm_ad = matrix_inner(&wm.astar[diam], &wm.astar[diam]);
            assert_abs_diff_eq!(norm_ad, st.delta_star_d(), epsilon = 1e-9);
            let via_trace = (&wm.astar[diam] * &wm.astar[diam]).trace() / n as f64;
            assert_abs_diff_eq!(via_trace, st.delta_star_d(), epsilon = 1e-9);
            assert!(st.n_minus_harmonic >= st.delta_star_d() - 1e-9);
            for w in st.harmonic_means.windows(2) {
                assert!(w[1] >= w[0] - 1e-12);
            }
            if g.degree_profile().is_regular {
                let avg = (0..n).map(|u| dd.sphere(u, diam).len()).sum::<usize>() as f64 / n as f64;
                assert_abs_diff_eq!(st.delta_star_d(), avg, epsilon = 1e-9);
            }
        }
    }
}
