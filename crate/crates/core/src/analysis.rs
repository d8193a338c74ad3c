//! The full pipeline for one graph, computed once and shared by the theorem
//! checks, the classifiers and the report.

use nalgebra::DMatrix;

use crate::error::Result;
use crate::graph::{DegreeProfile, DistanceData, Graph};
use crate::par::Exec;
use crate::poly::{predistance_polynomials, InnerProductContext, Normalization, PolySequence};
use crate::spectral::{
    self, Idempotents, LocalSpectrum, PerronWeights, SpectralOptions, Spectrum,
};
use crate::weighted::{self, ExcessStats, WeightedMatrices};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Relative off-diagonal tolerance of the Jacobi iteration.
    pub eigen: f64,
    /// Relative gap below which eigenvalues are merged.
    pub group: f64,
    /// Local multiplicities at or below this count as zero. Sets `d_u`.
    pub presence: f64,
    /// Relative tolerance for scalar equality in the theorem checks.
    pub eq: f64,
    /// Entrywise tolerance for matrix and vector certificates.
    pub cert: f64,
    /// Relative tolerance for the constancy tests of the combinatorial oracles.
    pub constancy: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eigen: 1e-12,
            group: 1e-7,
            presence: 1e-9,
            eq: 1e-7,
            cert: 1e-6,
            constancy: 1e-7,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Config {
    pub tol: Tolerances,
    pub exec: Exec,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub graph: Graph,
    pub distances: DistanceData,
    pub degrees: DegreeProfile,
    pub spectrum: Spectrum,
    pub perron: PerronWeights,
    pub idempotents: Idempotents,
    pub local_spectra: Vec<LocalSpectrum>,
    pub global: PolySequence,
    pub locals: Vec<PolySequence>,
    pub weighted: WeightedMatrices,
    pub stats: ExcessStats,
    pub config: Config,
}

impl Analysis {
    pub fn new(graph: Graph, config: Config) -> Result<Self> {
        let exec = config.exec;
        let tol = config.tol;
        let distances = graph.distance_data_with(exec);
        let degrees = graph.degree_profile();
        let spectrum = spectral::eigendecompose(
            &graph,
            &SpectralOptions {
                jacobi_tol: tol.eigen,
                group_tol: tol.group,
            },
        )?;
        let perron = spectral::perron_weights(&spectrum)?;
        let idempotents = spectral::idempotents(&spectrum, exec);
        let local_spectra = spectral::local_spectra(&idempotents, &distances, tol.presence, exec);
        let global = predistance_polynomials(
            &InnerProductContext::global(&spectrum),
            Normalization::Global,
        )?;
        let locals = exec.try_map(graph.n(), |u| {
            let ctx = InnerProductContext::local(&local_spectra[u], &spectrum);
            predistance_polynomials(
                &ctx,
                Normalization::Local {
                    alpha_u: perron.alpha[u],
                },
            )
        })?;
        let weighted = weighted::weighted_matrices(&distances, &perron);
        let stats = weighted::excess_stats(&graph, &distances, &perron, &global, exec);
        Ok(Analysis {
            graph,
            distances,
            degrees,
            spectrum,
            perron,
            idempotents,
            local_spectra,
            global,
            locals,
            weighted,
            stats,
            config,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn diameter(&self) -> usize {
        self.distances.diameter()
    }

    pub fn d(&self) -> usize {
        self.spectrum.d()
    }

    pub fn min_du(&self) -> usize {
        self.local_spectra.iter().map(|l| l.du).min().unwrap()
    }

    pub fn is_regular(&self) -> bool {
        self.degrees.is_regular
    }

    /// `p(A)` for the polynomial taking `values[i]` at `lambda_i`.
    pub fn spectral_matrix(&self, values: &[f64]) -> DMatrix<f64> {
        self.idempotents.combine(values)
    }

    /// Values of `p_{>=D} = H - q_{D-1}` at every distinct eigenvalue.
    pub fn excess_poly_values(&self) -> Vec<f64> {
        let top = &self.global.sum_values[self.d()];
        let below = &self.global.sum_values[self.diameter() - 1];
        top.iter().zip(below).map(|(h, q)| h - q).collect()
    }
}

/// Runs the pipeline on every graph, fanning out over graphs. Each graph is
/// analyzed sequentially inside its task.
pub fn analyze_batch(graphs: &[Graph], config: Config) -> Vec<Result<Analysis>> {
    let inner = Config {
        exec: Exec::Sequential,
        ..config
    };
    config
        .exec
        .map(graphs.len(), |i| Analysis::new(graphs[i].clone(), inner))
}
