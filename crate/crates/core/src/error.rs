use thiserror::Error;

use crate::pair::DeltaStrength;

/// Errors raised by model construction, evaluation and verification.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("parameter `{name}` out of range: {reason}")]
    ParameterOutOfRange { name: String, reason: String },

    #[error("missing parameter `{0}`")]
    MissingParameter(String),

    #[error("unknown parameter `{name}` for model `{model}`")]
    UnknownParameter { model: String, name: String },

    #[error("evaluation at singular point x = {x} (delta part: {delta:?})")]
    SingularPoint {
        x: f64,
        delta: Option<DeltaStrength>,
    },

    #[error("non-integrable singularity at x = {at} between {from} and {to}")]
    NonIntegrable { from: f64, to: f64, at: f64 },

    #[error("separations {r1}, {r2}, {r3} do not sum to zero")]
    NotZeroSum { r1: f64, r2: f64, r3: f64 },

    #[error("prepotential family `{0}` has an irreducible three-body term")]
    IrreducibleThreeBody(String),

    #[error("geometry mismatch: {0}")]
    Geometry(String),

    #[error("coincident particles {i} and {j}")]
    Coincident { i: usize, j: usize },

    #[error("finite-difference stencil crosses a singularity (particles {i} and {j})")]
    StencilCrossesSingularity { i: usize, j: usize },

    #[error("could not place particles with min separation {min_sep} after {attempts} attempts")]
    RejectionFailure { min_sep: f64, attempts: usize },

    #[error("model has no delta term")]
    NoDeltaTerm,

    #[error("prepotential is not odd: {0}")]
    NotOdd(String),

    #[error("superpotential is not linear, outside the rational coefficient class")]
    NonlinearSuperpotential,

    #[error("term budget exceeded: {terms} > {budget}")]
    BudgetExceeded { terms: usize, budget: usize },

    #[error("dimension budget exceeded: {dim} > {budget}")]
    DimensionBudget { dim: usize, budget: usize },

    #[error("unsupported for lattice discretization: {0}")]
    UnsupportedFamily(String),

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
