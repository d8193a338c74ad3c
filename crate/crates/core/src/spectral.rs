//! Symmetric eigendecomposition, distinct-eigenvalue grouping, the Perron
//! vector, spectral idempotents and per-vertex local spectra.

use std::ops::Range;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::{DistanceData, Graph};
use crate::par::Exec;

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 30;

/// Components smaller than this are skipped when fixing eigenvector signs.
const SIGN_EPS: f64 = 1e-12;

/// Full eigendecomposition of a symmetric matrix, eigenvalues descending and
/// eigenvectors stored as orthonormal columns.
#[derive(Clone, Debug)]
pub struct EigenPairs {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

/// Cyclic-by-row Jacobi rotations until the off-diagonal Frobenius norm drops
/// below `tol * ||a||_F`.
pub fn jacobi_eigen(a: &DMatrix<f64>, tol: f64) -> Result<EigenPairs> {
    jacobi_eigen_capped(a, tol, MAX_SWEEPS)
}

fn jacobi_eigen_capped(a: &DMatrix<f64>, tol: f64, max_sweeps: usize) -> Result<EigenPairs> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix must be square");
    let mut w: Vec<f64> = (0..n * n).map(|k| a[(k / n, k % n)]).collect();
    for p in 0..n {
        for q in p + 1..n {
            let s = 0.5 * (w[p * n + q] + w[q * n + p]);
            w[p * n + q] = s;
            w[q * n + p] = s;
        }
    }
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let norm = a.norm();
    let off_norm = |w: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    s += w[p * n + q] * w[p * n + q];
                }
            }
        }
        s.sqrt()
    };

    let mut converged = false;
    for sweep in 0..max_sweeps {
        if off_norm(&w) <= tol * norm {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = w[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = w[p * n + p];
                let aqq = w[q * n + q];
                let g = 100.0 * apq.abs();
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    w[p * n + q] = 0.0;
                    w[q * n + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for r in 0..n {
                    let arp = w[r * n + p];
                    let arq = w[r * n + q];
                    w[r * n + p] = c * arp - s * arq;
                    w[r * n + q] = s * arp + c * arq;
                }
                for r in 0..n {
                    let apr = w[p * n + r];
                    let aqr = w[q * n + r];
                    w[p * n + r] = c * apr - s * aqr;
                    w[q * n + r] = s * apr + c * aqr;
                }
                w[p * n + p] = app - t * apq;
                w[q * n + q] = aqq + t * apq;
                w[p * n + q] = 0.0;
                w[q * n + p] = 0.0;

                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = c * vrp - s * vrq;
                    v[r * n + q] = s * vrp + c * vrq;
                }
            }
        }
    }
    if !converged {
        let off = off_norm(&w);
        if off > tol * norm {
            return Err(Error::Convergence {
                sweeps: max_sweeps,
                off,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[j * n + j].total_cmp(&w[i * n + i]));
    let values = order.iter().map(|&i| w[i * n + i]).collect();
    let mut vectors = DMatrix::from_fn(n, n, |r, k| v[r * n + order[k]]);
    for mut col in vectors.column_iter_mut() {
        if let Some(&first) = col.iter().find(|x| x.abs() > SIGN_EPS) {
            if first < 0.0 {
                col.neg_mut();
            }
        }
    }
    Ok(EigenPairs { values, vectors })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralOptions {
    /// Relative off-diagonal tolerance for the Jacobi iteration.
    pub jacobi_tol: f64,
    /// Eigenvalues closer than `group_tol * max(1, |lambda_0|)` are merged.
    pub group_tol: f64,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            jacobi_tol: 1e-12,
            group_tol: 1e-7,
        }
    }
}

/// Distinct eigenvalues `lambda_0 > .. > lambda_d` with multiplicities and the
/// underlying orthonormal eigenbasis.
#[derive(Clone, Debug)]
pub struct Spectrum {
    lambdas: Vec<f64>,
    mults: Vec<usize>,
    classes: Vec<Range<usize>>,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
}

impl Spectrum {
    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn lambda0(&self) -> f64 {
        self.lambdas[0]
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.mults
    }

    /// Number of distinct eigenvalues minus one.
    pub fn d(&self) -> usize {
        self.lambdas.len() - 1
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Raw eigenvalues, descending, one per eigenvector column.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    /// Column range of the eigenvectors belonging to distinct eigenvalue `i`.
    pub fn class(&self, i: usize) -> Range<usize> {
        self.classes[i].clone()
    }
}

pub fn eigendecompose(g: &Graph, opts: &SpectralOptions) -> Result<Spectrum> {
    if !(opts.jacobi_tol > 0.0 && opts.jacobi_tol < 1.0) {
        return Err(Error::Hypothesis(format!(
            "eigensolver tolerance {} must lie in (0, 1)",
            opts.jacobi_tol
        )));
    }
    let pairs = jacobi_eigen(g.adjacency(), opts.jacobi_tol)?;
    Ok(group_eigenvalues(pairs, opts.group_tol))
}

fn group_eigenvalues(pairs: EigenPairs, group_tol: f64) -> Spectrum {
    let ev = &pairs.values;
    let gap = group_tol * ev[0].abs().max(1.0);
    let mut classes = Vec::new();
    let mut start = 0;
    for k in 1..=ev.len() {
        if k == ev.len() || ev[k - 1] - ev[k] > gap {
            classes.push(start..k);
            start = k;
        }
    }
    let lambdas = classes
        .iter()
        .map(|r| ev[r.clone()].iter().sum::<f64>() / r.len() as f64)
        .collect();
    let mults = classes.iter().map(|r| r.len()).collect();
    Spectrum {
        lambdas,
        mults,
        classes,
        eigenvalues: pairs.values,
        eigenvectors: pairs.vectors,
    }
}

/// Perron vector in both normalizations. `rho(u) = alpha[u]` is the weight
/// the vertex carries in all weighted quantities.
#[derive(Clone, Debug)]
pub struct PerronWeights {
    pub alpha: Vec<f64>,
    pub nu: Vec<f64>,
}

impl PerronWeights {
    pub fn rho(&self, u: usize) -> f64 {
        self.alpha[u]
    }

    /// `||rho_U||^2 = sum_{v in U} alpha_v^2`.
    pub fn rho_norm_sq(&self, vertices: &[usize]) -> f64 {
        vertices.iter().map(|&v| self.alpha[v] * self.alpha[v]).sum()
    }
}

pub fn perron_weights(spec: &Spectrum) -> Result<PerronWeights> {
    if spec.mults[0] != 1 {
        return Err(Error::PerronMultiplicity(spec.mults[0]));
    }
    let n = spec.n();
    let v0 = spec.eigenvectors.column(0);
    let sign = if v0.sum() < 0.0 { -1.0 } else { 1.0 };
    let scale = sign * (n as f64).sqrt() / v0.norm();
    let alpha: Vec<f64> = v0.iter().map(|x| x * scale).collect();
    let positivity = 1e-12;
    if let Some((vertex, &value)) = alpha.iter().enumerate().find(|(_, &a)| a <= positivity) {
        return Err(Error::NonPositiveEigenvector { vertex, value });
    }
    let min = alpha.iter().copied().fold(f64::INFINITY, f64::min);
    let nu = alpha.iter().map(|a| a / min).collect();
    Ok(PerronWeights { alpha, nu })
}

/// Orthogonal projectors `E_0..E_d` onto the eigenspaces.
#[derive(Clone, Debug)]
pub struct Idempotents {
    pub e: Vec<DMatrix<f64>>,
}

impl Idempotents {
    pub fn len(&self) -> usize {
        self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e.is_empty()
    }

    /// `sum_i values[i] * E_i`, i.e. `p(A)` for any `p` with `p(lambda_i) = values[i]`.
    pub fn combine(&self, values: &[f64]) -> DMatrix<f64> {
        assert_eq!(values.len(), self.e.len());
        let n = self.e[0].nrows();
        let mut out = DMatrix::zeros(n, n);
        for (e, &c) in self.e.iter().zip(values) {
            if c != 0.0 {
                out += e * c;
            }
        }
        out
    }

    /// Column `u` of [`Idempotents::combine`], restricted to the listed classes.
    pub fn combine_column(&self, u: usize, classes: &[usize], values: &[f64]) -> DVector<f64> {
        let n = self.e[0].nrows();
        let mut out = DVector::zeros(n);
        for (&i, &c) in classes.iter().zip(values) {
            out.axpy(c, &self.e[i].column(u), 1.0);
        }
        out
    }
}

/// `E_i = V_i V_i^T` from the orthonormal eigenvectors of class `i`.
pub fn idempotents(spec: &Spectrum, exec: Exec) -> Idempotents {
    let e = exec.map(spec.lambdas.len(), |i| {
        let r = spec.class(i);
        let vi = spec.eigenvectors.columns(r.start, r.len());
        vi * vi.transpose()
    });
    Idempotents { e }
}

/// `E_i = (1/phi_i) prod_{j != i} (A - lambda_j I)` with `phi_i = prod_{j != i}(lambda_i - lambda_j)`.
/// Only well conditioned for small `d`; used to cross-check [`idempotents`].
pub fn lagrange_idempotents(adjacency: &DMatrix<f64>, lambdas: &[f64]) -> Idempotents {
    let n = adjacency.nrows();
    let e = (0..lambdas.len())
        .map(|i| {
            let mut m = DMatrix::identity(n, n);
            let mut phi = 1.0;
            for (j, &lj) in lambdas.iter().enumerate() {
                if j != i {
                    let shifted = adjacency - DMatrix::identity(n, n) * lj;
                    m = &m * shifted;
                    phi *= lambdas[i] - lj;
                }
            }
            m / phi
        })
        .collect();
    Idempotents { e }
}

/// The `u`-local spectrum: local multiplicities and the eigenvalues they support.
#[derive(Clone, Debug)]
pub struct LocalSpectrum {
    pub vertex: usize,
    /// `m_u(lambda_i) = (E_i)_{uu}` for every distinct eigenvalue.
    pub local_mults: Vec<f64>,
    /// Whether `lambda_i` is a `u`-local eigenvalue.
    pub present: Vec<bool>,
    /// Number of local eigenvalues other than `lambda_0`.
    pub du: usize,
    pub eccentricity: usize,
    pub is_extremal: bool,
}

impl LocalSpectrum {
    /// Indices of the local eigenvalues, `0` first.
    pub fn support(&self) -> Vec<usize> {
        (0..self.present.len()).filter(|&i| self.present[i]).collect()
    }

    pub fn local_eigenvalues(&self, spec: &Spectrum) -> Vec<f64> {
        self.support().into_iter().map(|i| spec.lambdas[i]).collect()
    }
}

pub fn local_spectrum(
    u: usize,
    idem: &Idempotents,
    dd: &DistanceData,
    presence_tol: f64,
) -> LocalSpectrum {
    let local_mults: Vec<f64> = idem.e.iter().map(|e| e[(u, u)]).collect();
    let mut present: Vec<bool> = local_mults.iter().map(|&m| m > presence_tol).collect();
    // m_u(lambda_0) = alpha_u^2 / n is positive for every vertex of a connected graph.
    present[0] = true;
    let du = present.iter().skip(1).filter(|&&p| p).count();
    let eccentricity = dd.eccentricity(u);
    LocalSpectrum {
        vertex: u,
        local_mults,
        present,
        du,
        eccentricity,
        is_extremal: eccentricity == du,
    }
}

pub fn local_spectra(
    idem: &Idempotents,
    dd: &DistanceData,
    presence_tol: f64,
    exec: Exec,
) -> Vec<LocalSpectrum> {
    exec.map(dd.n(), |u| local_spectrum(u, idem, dd, presence_tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use approx::assert_abs_diff_eq;

    fn spectrum(g: &Graph) -> Spectrum {
        eigendecompose(g, &SpectralOptions::default()).unwrap()
    }

    #[test]
    fn k23_spectrum() {
        let s = spectrum(&fixtures::complete_bipartite(2, 3));
        assert_eq!(s.multiplicities(), [1, 3, 1]);
        let six = 6f64.sqrt();
        for (got, want) in s.lambdas().iter().zip([six, 0.0, -six]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn k2_and_petersen_spectra() {
        let s = spectrum(&fixtures::complete(2));
        assert_eq!(s.multiplicities(), [1, 1]);
        assert_abs_diff_eq!(s.lambdas()[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.lambdas()[1], -1.0, epsilon = 1e-14);

        let s = spectrum(&fixtures::petersen());
        assert_eq!(s.multiplicities(), [1, 5, 4]);
        for (got, want) in s.lambdas().iter().zip([3.0, 1.0, -2.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        // trace identities: sum m_i lambda_i = 0, sum m_i lambda_i^2 = 2|E|
        let tr1: f64 = s.lambdas().iter().zip(s.multiplicities()).map(|(l, &m)| l * m as f64).sum();
        let tr2: f64 = s.lambdas().iter().zip(s.multiplicities()).map(|(l, &m)| l * l * m as f64).sum();
        assert_abs_diff_eq!(tr1, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(tr2, 30.0, epsilon = 1e-12);
    }

    #[test]
    fn jacobi_residuals_and_orthonormality() {
        for (_, g) in fixtures::bundled() {
            let a = g.adjacency();
            let p = jacobi_eigen(a, 1e-12).unwrap();
            for (k, &lam) in p.values.iter().enumerate() {
                let v = p.vectors.column(k);
                assert!((a * v - v * lam).norm() <= 1e-8 * a.norm());
            }
            let gram = p.vectors.transpose() * &p.vectors;
            assert!((gram - DMatrix::identity(g.n(), g.n())).amax() < 1e-12);
        }
    }

    #[test]
    fn jacobi_matches_reference_eigensolver() {
        let g = fixtures::circulant(8, &[1, 2]);
        let mut ours = jacobi_eigen(g.adjacency(), 1e-12).unwrap().values;
        let mut theirs: Vec<f64> = g.adjacency().clone().symmetric_eigen().eigenvalues.iter().copied().collect();
        ours.sort_by(f64::total_cmp);
        theirs.sort_by(f64::total_cmp);
        for (a, b) in ours.iter().zip(&theirs) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn jacobi_reports_nonconvergence() {
        let g = fixtures::petersen();
        let r = jacobi_eigen_capped(g.adjacency(), 1e-12, 1);
        assert!(matches!(r, Err(Error::Convergence { sweeps: 1, .. })));
        let bad = eigendecompose(&g, &SpectralOptions { jacobi_tol: 2.0, ..Default::default() });
        assert!(matches!(bad, Err(Error::Hypothesis(_))));
    }

    #[test]
    fn perron_vectors() {
        let s = spectrum(&fixtures::complete_bipartite(2, 3));
        let pw = perron_weights(&s).unwrap();
        let a3 = 5f64.sqrt() / 2.0;
        let a2 = (5.0f64 / 6.0).sqrt();
        for (u, want) in [a3, a3, a2, a2, a2].into_iter().enumerate() {
            assert_abs_diff_eq!(pw.alpha[u], want, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(pw.nu.iter().copied().fold(f64::INFINITY, f64::min), 1.0, epsilon = 1e-15);

        let pw = perron_weights(&spectrum(&fixtures::petersen())).unwrap();
        assert!(pw.alpha.iter().chain(&pw.nu).all(|&a| (a - 1.0).abs() < 1e-12));

        let pw = perron_weights(&spectrum(&fixtures::path(3))).unwrap();
        let want = [3f64.sqrt() / 2.0, 6f64.sqrt() / 2.0, 3f64.sqrt() / 2.0];
        for (a, w) in pw.alpha.iter().zip(want) {
            assert_abs_diff_eq!(*a, w, epsilon = 1e-12);
        }
    }

    #[test]
    fn idempotent_algebra() {
        for (_, g) in fixtures::bundled() {
            let s = spectrum(&g);
            let idem = idempotents(&s, Exec::default());
            let n = g.n();
            let sum = idem.e.iter().fold(DMatrix::zeros(n, n), |acc, e| acc + e);
            assert!((sum - DMatrix::identity(n, n)).norm() <= 1e-9);
            for (i, ei) in idem.e.iter().enumerate() {
                assert!((ei * ei - ei).norm() <= 1e-8);
                assert!((g.adjacency() * ei - ei * s.lambdas()[i]).norm() <= 1e-8);
                for ej in idem.e.iter().skip(i + 1) {
                    assert!((ei * ej).norm() <= 1e-8);
                }
            }
            let lag = lagrange_idempotents(g.adjacency(), s.lambdas());
            for (a, b) in idem.e.iter().zip(&lag.e) {
                assert!((a - b).amax() <= 1e-6);
            }
        }
    }

    #[test]
    fn small_idempotents() {
        let s = spectrum(&fixtures::complete(2));
        let idem = idempotents(&s, Exec::Sequential);
        let e0 = DMatrix::from_row_slice(2, 2, &[0.5, 0.5, 0.5, 0.5]);
        let e1 = DMatrix::from_row_slice(2, 2, &[0.5, -0.5, -0.5, 0.5]);
        assert!((&idem.e[0] - e0).amax() < 1e-14);
        assert!((&idem.e[1] - e1).amax() < 1e-14);

        let s = spectrum(&fixtures::complete_bipartite(2, 3));
        let pw = perron_weights(&s).unwrap();
        let a = DVector::from_vec(pw.alpha.clone());
        let want = &a * a.transpose() / 5.0;
        assert!((&idempotents(&s, Exec::Sequential).e[0] - want).amax() < 1e-12);
    }

    #[test]
    fn path_local_spectra() {
        let g = fixtures::path(3);
        let s = spectrum(&g);
        let dd = g.distance_data();
        let idem = idempotents(&s, Exec::default());
        let center = local_spectrum(1, &idem, &dd, 1e-9);
        assert!(center.local_mults[1].abs() < 1e-12);
        assert_eq!((center.du, center.eccentricity), (1, 1));
        assert!(center.is_extremal);
        let end = local_spectrum(0, &idem, &dd, 1e-9);
        assert_eq!((end.du, end.eccentricity), (2, 2));
        assert!(end.is_extremal);
        for ls in [center, end] {
            assert_abs_diff_eq!(ls.local_mults.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn local_multiplicity_identities() {
        for (_, g) in fixtures::bundled() {
            let s = spectrum(&g);
            let pw = perron_weights(&s).unwrap();
            let dd = g.distance_data();
            let idem = idempotents(&s, Exec::default());
            let ls = local_spectra(&idem, &dd, 1e-9, Exec::default());
            let n = g.n() as f64;
            for (i, &m) in s.multiplicities().iter().enumerate() {
                let tot: f64 = ls.iter().map(|l| l.local_mults[i]).sum();
                assert_abs_diff_eq!(tot, m as f64, epsilon = 1e-9);
            }
            for l in &ls {
                assert_abs_diff_eq!(l.local_mults[0], pw.alpha[l.vertex].powi(2) / n, epsilon = 1e-9);
                assert!(l.eccentricity <= l.du);
            }
        }
    }
}
