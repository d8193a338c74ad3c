//! Versioned JSON report of a full analysis.

use nalgebra::DMatrix;
use serde::Serialize;
use serde_json::Value;

use crate::analysis::{Analysis, Tolerances};
use crate::classify::{self, Classification};
use crate::poly::{self, PolySequence, Recurrence};
use crate::spectral;
use crate::theorems::{self, TheoremReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphMeta {
    pub n: usize,
    pub edges: usize,
    pub diameter: usize,
    pub d: usize,
    pub regular: bool,
    pub labels: Vec<String>,
    pub degrees: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ToleranceMeta {
    pub eigen: f64,
    pub group: f64,
    pub presence: f64,
    pub eq: f64,
    pub cert: f64,
    pub constancy: f64,
}

impl From<Tolerances> for ToleranceMeta {
    fn from(t: Tolerances) -> Self {
        ToleranceMeta {
            eigen: t.eigen,
            group: t.group,
            presence: t.presence,
            eq: t.eq,
            cert: t.cert,
            constancy: t.constancy,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PerronReport {
    pub lambda0: f64,
    pub alpha: Vec<f64>,
    pub nu: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LocalSpectrumReport {
    pub vertex: String,
    pub local_multiplicities: Vec<f64>,
    pub local_eigenvalues: Vec<f64>,
    pub du: usize,
    pub eccentricity: usize,
    pub extremal: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RecurrenceReport {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

impl From<&Recurrence> for RecurrenceReport {
    fn from(r: &Recurrence) -> Self {
        RecurrenceReport {
            a: r.a.clone(),
            b: r.b.clone(),
            c: r.c.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PolyTable {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
    pub p_at_lambda0: Vec<f64>,
    pub q_at_lambda0: Vec<f64>,
    pub coefficients: Vec<Vec<f64>>,
    pub recurrence: RecurrenceReport,
}

impl PolyTable {
    fn new(seq: &PolySequence, vertex: Option<String>) -> Self {
        let k = seq.top();
        PolyTable {
            vertex,
            p_at_lambda0: (0..=k).map(|i| seq.p_at_lambda0(i)).collect(),
            q_at_lambda0: (0..=k).map(|j| seq.q_at_lambda0(j)).collect(),
            coefficients: seq.polys.iter().map(|p| p.coeffs().to_vec()).collect(),
            recurrence: (&seq.recurrence).into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PolynomialsReport {
    pub global: PolyTable,
    pub local: Vec<PolyTable>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExcessReport {
    pub spectral_excess: f64,
    pub n_minus_harmonic: f64,
    pub delta_star_d: f64,
    pub delta_stars: Vec<f64>,
    pub harmonic_means: Vec<f64>,
    pub avg_weighted_degree: Vec<f64>,
}

/// Independent recomputations of quantities the pipeline derives spectrally.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CrossValidation {
    /// `max_i ||E_i - prod_{j != i} (A - lambda_j I)/(lambda_i - lambda_j)||_inf`.
    pub idempotent_lagrange: f64,
    /// `||A V - V diag(lambda)||_inf`.
    pub eigen_residual: f64,
    /// Spectral against Horner evaluation of the Hoffman polynomial.
    pub hoffman_horner: f64,
    /// `||H(A) - J*||_inf`.
    pub hoffman_identity: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub graph: GraphMeta,
    pub tolerances: ToleranceMeta,
    pub spectrum: SpectrumReport,
    pub perron: PerronReport,
    pub local_spectra: Vec<LocalSpectrumReport>,
    pub polynomials: PolynomialsReport,
    pub excess: ExcessReport,
    pub theorems: Vec<TheoremReport>,
    pub classification: Classification,
    pub cross_validation: CrossValidation,
}

fn cross_validation(an: &Analysis) -> CrossValidation {
    let adj = an.graph.adjacency();
    let lag = spectral::lagrange_idempotents(adj, an.spectrum.lambdas());
    let idempotent_lagrange = lag
        .e
        .iter()
        .zip(&an.idempotents.e)
        .map(|(a, b)| (a - b).amax())
        .fold(0.0, f64::max);
    let v = an.spectrum.eigenvectors();
    let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(an.spectrum.eigenvalues()));
    let eigen_residual = (adj * v - v * diag).amax();
    let (hoffman_horner, hoffman_identity) = match poly::hoffman_polynomial(&an.global) {
        Ok(h) => {
            let values: Vec<f64> = an.spectrum.lambdas().iter().map(|&x| h.eval(x)).collect();
            let spectral_h = an.spectral_matrix(&values);
            (
                (poly::evaluate_at_matrix(&h, adj) - &spectral_h).amax(),
                (spectral_h - &an.weighted.jstar).amax(),
            )
        }
        Err(_) => (f64::NAN, f64::NAN),
    };
    CrossValidation {
        idempotent_lagrange,
        eigen_residual,
        hoffman_horner,
        hoffman_identity,
    }
}

impl AnalysisReport {
    pub fn new(an: &Analysis) -> Self {
        let g = &an.graph;
        let label = |u: usize| g.label(u).to_string();
        let st = &an.stats;
        AnalysisReport {
            schema_version: SCHEMA_VERSION,
            graph: GraphMeta {
                n: an.n(),
                edges: g.edges().len(),
                diameter: an.diameter(),
                d: an.d(),
                regular: an.is_regular(),
                labels: g.labels().to_vec(),
                degrees: an.degrees.degrees.clone(),
            },
            tolerances: an.config.tol.into(),
            spectrum: SpectrumReport {
                eigenvalues: an.spectrum.lambdas().to_vec(),
                multiplicities: an.spectrum.multiplicities().to_vec(),
            },
            perron: PerronReport {
                lambda0: an.spectrum.lambda0(),
                alpha: an.perron.alpha.clone(),
                nu: an.perron.nu.clone(),
            },
            local_spectra: an
                .local_spectra
                .iter()
                .map(|ls| LocalSpectrumReport {
                    vertex: label(ls.vertex),
                    local_multiplicities: ls.local_mults.clone(),
                    local_eigenvalues: ls.local_eigenvalues(&an.spectrum),
                    du: ls.du,
                    eccentricity: ls.eccentricity,
                    extremal: ls.is_extremal,
                })
                .collect(),
            polynomials: PolynomialsReport {
                global: PolyTable::new(&an.global, None),
                local: an
                    .locals
                    .iter()
                    .enumerate()
                    .map(|(u, s)| PolyTable::new(s, Some(label(u))))
                    .collect(),
            },
            excess: ExcessReport {
                spectral_excess: st.spectral_excess,
                n_minus_harmonic: st.n_minus_harmonic,
                delta_star_d: st.delta_star_d(),
                delta_stars: st.delta_stars.clone(),
                harmonic_means: st.harmonic_means.clone(),
                avg_weighted_degree: st.avg_weighted_degree.clone(),
            },
            theorems: theorems::all_reports(an),
            classification: classify::classify(an),
            cross_validation: cross_validation(an),
        }
    }

    pub fn strip_witnesses(&mut self) {
        for t in &mut self.theorems {
            t.witnesses.clear();
        }
    }

    pub fn invariant_violated(&self) -> bool {
        let eq = self.tolerances.eq;
        self.theorems.iter().any(|t| t.invariant_violated(eq))
    }
}

/// Rounds a float to 15 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            if let Some(r) = num.as_f64().map(round_sig).and_then(serde_json::Number::from_f64) {
                *num = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Serializes with every float rounded to 15 significant digits.
/// Non-finite floats become `null`.
pub fn to_json_value<T: Serialize>(value: &T) -> serde_json::Result<Value> {
    let mut v = serde_json::to_value(value)?;
    round_value(&mut v);
    Ok(v)
}

/// One-screen human summary.
pub fn summary(r: &AnalysisReport) -> String {
    use std::fmt::Write;
    let mut s = String::new();
    let g = &r.graph;
    let _ = writeln!(
        s,
        "n = {}, |E| = {}, D = {}, d = {}, {}",
        g.n,
        g.edges,
        g.diameter,
        g.d,
        if g.regular { "regular" } else { "nonregular" }
    );
    let spec: Vec<String> = r
        .spectrum
        .eigenvalues
        .iter()
        .zip(&r.spectrum.multiplicities)
        .map(|(l, m)| format!("{:.6}^{m}", round_sig(*l)))
        .collect();
    let _ = writeln!(s, "spectrum: {}", spec.join(", "));
    let e = &r.excess;
    let _ = writeln!(s, "p_(>=D)(lambda_0)  = {:.10}", e.spectral_excess);
    let _ = writeln!(s, "n - H*_(<=D-1)     = {:.10}", e.n_minus_harmonic);
    let _ = writeln!(s, "delta*_D           = {:.10}", e.delta_star_d);
    let c = &r.classification;
    let _ = writeln!(
        s,
        "distance-regular: {}{}",
        c.is_distance_regular,
        c.intersection_array
            .as_ref()
            .map(|a| format!(" {a}"))
            .unwrap_or_default()
    );
    let _ = writeln!(s, "distance-polynomial: {}", c.is_distance_polynomial);
    let _ = writeln!(s, "partial distance-regularity level: {}", c.partial_dr_level);
    let _ = writeln!(s, "pseudo-distance-regular vertices: {:?}", c.pseudo_dr_vertices);
    let _ = writeln!(s, "theorem checks:");
    for t in &r.theorems {
        let mut tag = t.theorem.to_string();
        if let Some(u) = t.vertex {
            tag += &format!(" u={}", g.labels[u]);
        }
        if let Some(j) = t.j {
            tag += &format!(" j={j}");
        }
        if let Some(m) = t.m {
            tag += &format!(" m={m}");
        }
        let _ = writeln!(s, "  {tag:<14} slack {:>+.3e}  {}", t.slack, t.verdict);
    }
    s
}
