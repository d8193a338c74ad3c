use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph must be connected (found {components} components)")]
    Disconnected { components: usize },

    #[error("loop or repeated edge {u} {v}")]
    LoopOrMultiEdge { u: String, v: String },

    #[error("graph must have at least 2 vertices")]
    TooSmall,

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    Convergence { sweeps: usize, off: f64 },

    #[error("Perron vector entry {value:e} at vertex {vertex} is not positive")]
    NonPositiveEigenvector { vertex: usize, value: f64 },

    #[error("largest eigenvalue has multiplicity {0}, expected 1")]
    PerronMultiplicity(usize),

    #[error("polynomial degree {degree} exceeds context dimension {max}")]
    Degree { degree: usize, max: usize },

    #[error("Gram matrix numerically singular at degree {0}")]
    DegenerateMeasure(usize),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Coarse classification used by the CLI to pick an exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Numerical,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Convergence { .. }
            | Error::NonPositiveEigenvector { .. }
            | Error::PerronMultiplicity(_)
            | Error::DegenerateMeasure(_) => ErrorClass::Numerical,
            _ => ErrorClass::Input,
        }
    }
}
