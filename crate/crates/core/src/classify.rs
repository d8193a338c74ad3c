//! Combinatorial oracles for the regularity notions, independent of the
//! orthogonal-polynomial route used by the theorem checks.

use serde::Serialize;

use crate::analysis::Analysis;
use crate::graph::{DistanceData, Graph};
use crate::poly::PolySequence;
use crate::spectral::{Idempotents, PerronWeights, Spectrum};

fn close(x: f64, reference: f64, tol: f64) -> bool {
    (x - reference).abs() <= tol * reference.abs().max(1.0)
}

/// Perron-weighted intersection numbers `(c*_i, a*_i, b*_i)` at one level.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PseudoIntersection {
    pub c: f64,
    pub a: f64,
    pub b: f64,
}

/// Two vertices of the same sphere whose weighted triples differ.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConstancyViolation {
    pub level: usize,
    pub first: usize,
    pub second: usize,
    pub first_values: [f64; 3],
    pub second_values: [f64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PseudoDr {
    pub vertex: usize,
    pub holds: bool,
    /// One entry per level `0..=ecc(u)` when `holds`.
    pub numbers: Vec<PseudoIntersection>,
    pub violation: Option<ConstancyViolation>,
}

/// `(c*_i(v), a*_i(v), b*_i(v))` for `v` in `Gamma_i(u)`: weighted sums over
/// the neighbours of `v` at distance `i-1`, `i`, `i+1` from `u`, divided by `alpha_v`.
pub fn weighted_triple(g: &Graph, dd: &DistanceData, alpha: &[f64], u: usize, v: usize) -> [f64; 3] {
    let i = dd.dist(u, v);
    let mut t = [0.0; 3];
    for &w in g.neighbors(v) {
        let k = dd.dist(u, w);
        // neighbours of v sit at distance i-1, i or i+1 from u
        t[k + 1 - i] += alpha[w];
    }
    t.map(|x| x / alpha[v])
}

pub fn is_pseudo_dr_around(
    g: &Graph,
    u: usize,
    dd: &DistanceData,
    pw: &PerronWeights,
    tol: f64,
) -> PseudoDr {
    let mut numbers = Vec::with_capacity(dd.eccentricity(u) + 1);
    for i in 0..=dd.eccentricity(u) {
        let sphere = dd.sphere(u, i);
        let first = sphere[0];
        let reference = weighted_triple(g, dd, &pw.alpha, u, first);
        for &v in &sphere[1..] {
            let t = weighted_triple(g, dd, &pw.alpha, u, v);
            if !(0..3).all(|k| close(t[k], reference[k], tol)) {
                return PseudoDr {
                    vertex: u,
                    holds: false,
                    numbers: Vec::new(),
                    violation: Some(ConstancyViolation {
                        level: i,
                        first,
                        second: v,
                        first_values: reference,
                        second_values: t,
                    }),
                };
            }
        }
        numbers.push(PseudoIntersection {
            c: reference[0],
            a: reference[1],
            b: reference[2],
        });
    }
    PseudoDr {
        vertex: u,
        holds: true,
        numbers,
        violation: None,
    }
}

/// `{b_0, .., b_{D-1}; c_1, .., c_D}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl std::fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DistanceRegularity {
    pub holds: bool,
    pub intersection_array: Option<IntersectionArray>,
    pub violation: Option<String>,
}

pub fn is_distance_regular(g: &Graph, dd: &DistanceData) -> DistanceRegularity {
    let diam = dd.diameter();
    let ones = vec![1.0; g.n()];
    // (c_i, a_i, b_i) per level, fixed by the first pair seen
    let mut levels: Vec<Option<[usize; 3]>> = vec![None; diam + 1];
    for u in 0..g.n() {
        for v in 0..g.n() {
            let i = dd.dist(u, v);
            let t = weighted_triple(g, dd, &ones, u, v).map(|x| x.round() as usize);
            match levels[i] {
                None => levels[i] = Some(t),
                Some(r) if r != t => {
                    return DistanceRegularity {
                        holds: false,
                        intersection_array: None,
                        violation: Some(format!(
                            "level {i}: (c,a,b) = {r:?} at one pair but {t:?} at ({u},{v})"
                        )),
                    };
                }
                Some(_) => {}
            }
        }
    }
    let levels: Vec<[usize; 3]> = levels.into_iter().map(Option::unwrap).collect();
    DistanceRegularity {
        holds: true,
        intersection_array: Some(IntersectionArray {
            b: levels[..diam].iter().map(|t| t[2]).collect(),
            c: levels[1..].iter().map(|t| t[0]).collect(),
        }),
        violation: None,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DistancePolynomial {
    pub holds: bool,
    /// Frobenius distance from `A_i` to the adjacency algebra, `i = 0..=D`.
    pub residuals: Vec<f64>,
}

/// Least-squares projection of each `A_i` onto the adjacency algebra. The
/// idempotents are an orthogonal basis of that algebra under
/// `<M, N> = (1/n) tr(MN)` with Gram diagonal `m_k / n`, so the normal
/// equations decouple.
pub fn is_distance_polynomial(
    dd: &DistanceData,
    spec: &Spectrum,
    idem: &Idempotents,
    tol: f64,
) -> DistancePolynomial {
    let n = dd.n() as f64;
    let residuals: Vec<f64> = dd
        .distance_matrices()
        .iter()
        .map(|ai| {
            let coeffs: Vec<f64> = idem
                .e
                .iter()
                .zip(spec.multiplicities())
                .map(|(e, &m)| ai.component_mul(e).sum() / m as f64)
                .collect();
            (ai - idem.combine(&coeffs)).norm()
        })
        .collect();
    DistancePolynomial {
        holds: residuals.iter().all(|&r| r <= tol * n),
        residuals,
    }
}

/// Largest `m <= min(D, d)` with `p_i(A) = A_i` entrywise for every `i <= m`.
pub fn partial_dr_level(
    dd: &DistanceData,
    seq: &PolySequence,
    idem: &Idempotents,
    tol: f64,
) -> usize {
    let cap = dd.diameter().min(seq.top());
    let mut level = 0;
    for i in 0..=cap {
        let pa = idem.combine(&seq.values[i]);
        if (pa - dd.distance_matrix(i)).amax() > tol {
            break;
        }
        level = i;
    }
    level
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Classification {
    pub is_regular: bool,
    pub is_distance_regular: bool,
    pub intersection_array: Option<IntersectionArray>,
    pub distance_regular_violation: Option<String>,
    pub pseudo_dr: Vec<PseudoDr>,
    pub pseudo_dr_vertices: Vec<usize>,
    pub partial_dr_level: usize,
    pub is_distance_polynomial: bool,
    pub distance_polynomial_residuals: Vec<f64>,
    pub extremal_vertices: Vec<usize>,
}

pub fn classify(an: &Analysis) -> Classification {
    let tol = an.config.tol;
    let dr = is_distance_regular(&an.graph, &an.distances);
    let pseudo_dr: Vec<PseudoDr> = an.config.exec.map(an.n(), |u| {
        is_pseudo_dr_around(&an.graph, u, &an.distances, &an.perron, tol.constancy)
    });
    let dp = is_distance_polynomial(&an.distances, &an.spectrum, &an.idempotents, tol.constancy);
    let level = partial_dr_level(&an.distances, &an.global, &an.idempotents, tol.cert);
    Classification {
        is_regular: an.is_regular(),
        is_distance_regular: dr.holds,
        intersection_array: dr.intersection_array,
        distance_regular_violation: dr.violation,
        pseudo_dr_vertices: pseudo_dr.iter().filter(|p| p.holds).map(|p| p.vertex).collect(),
        pseudo_dr,
        partial_dr_level: level,
        is_distance_polynomial: dp.holds,
        distance_polynomial_residuals: dp.residuals,
        extremal_vertices: an
            .local_spectra
            .iter()
            .filter(|l| l.is_extremal)
            .map(|l| l.vertex)
            .collect(),
    }
}
