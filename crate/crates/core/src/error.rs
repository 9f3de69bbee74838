use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vector must have at least one entry")]
    EmptyVector,

    #[error("non-finite value encountered{}", context_suffix(.0))]
    NonFinite(String),

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("normal vector is zero")]
    ZeroNormal,

    #[error("Lorentz hyperplane test needs total dimension at least 3, got {0}")]
    LorentzTooSmall(usize),

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("polyhedron has no halfspaces")]
    EmptyFacets,

    #[error("sampler produced a point outside the set: {0:?}")]
    SamplerNonMember(Vec<f64>),

    #[error("{0} is not supported for this cone")]
    Unsupported(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no convergence after {iterations} iterations (violation {violation:e}, displacement {displacement:e})")]
    NotConverged {
        iterations: usize,
        violation: f64,
        displacement: f64,
    },

    #[error("polyhedron appears infeasible (cycle displacement {displacement:e} after {iterations} iterations)")]
    SuspectedInfeasible { iterations: usize, displacement: f64 },
}

fn context_suffix(ctx: &str) -> String {
    if ctx.is_empty() {
        String::new()
    } else {
        format!(" in {ctx}")
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
