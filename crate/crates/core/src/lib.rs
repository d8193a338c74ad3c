//! Spectral excess machinery for finite connected graphs.
//!
//! The pipeline ([`analysis::Analysis`]) computes the spectrum, Perron
//! weights, spectral idempotents, local spectra, global and local predistance
//! polynomials and the Perron-weighted distance statistics of a graph. The
//! [`theorems`] module evaluates the spectral excess inequalities on top of
//! it and [`classify`] supplies independent combinatorial oracles for the
//! regularity notions those inequalities characterize.

pub mod analysis;
pub mod classify;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod graph6;
pub mod par;
pub mod poly;
pub mod report;
pub mod spectral;
pub mod theorems;
pub mod weighted;

pub use analysis::{Analysis, Config, Tolerances};
pub use error::{Error, Result};
pub use graph::{load_graph, Format, Graph};
pub use par::Exec;
