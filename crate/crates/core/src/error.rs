//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("measure is not a probability measure (total mass {0})")]
    NotProbability(f64),
    #[error("operation requires a purely atomic measure")]
    NotAtomic,
    #[error("operation requires a measure with a density part")]
    NoDensity,
    #[error("point too close to the unit circle (|z| = {0}); use a radial limit")]
    BoundaryGuard(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("radial limit diverges at angle {0}")]
    RadialDivergence(f64),
    #[error("root finding failed (residual {0:e})")]
    RootFinding(f64),
    #[error("quadrature resolution insufficient (Gram deviation {0:e})")]
    Quadrature(f64),
    #[error("eigenvalues not simple (gap {0:e}); vector b is not cyclic")]
    NonCyclic(f64),
    #[error("ill-conditioned computation: {0}")]
    Conditioning(String),
    #[error("input is not a member of the model space: {0}")]
    InconsistentMember(String),
    #[error("missing derivative of f at angle {0}")]
    MissingDerivative(f64),
    #[error("atoms collide: {0}")]
    AtomCollision(String),
    #[error("io: {0}")]
    Io(String),
    #[error("json: {0}")]
    Json(String),
}

impl Error {
    /// Stable machine-readable code, used in CLI error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidMeasure(_) => "invalid_measure",
            Error::NotProbability(_) => "not_probability",
            Error::NotAtomic => "not_atomic",
            Error::NoDensity => "no_density",
            Error::BoundaryGuard(_) => "boundary_guard",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::RadialDivergence(_) => "radial_divergence",
            Error::RootFinding(_) => "root_finding",
            Error::Quadrature(_) => "quadrature_resolution",
            Error::NonCyclic(_) => "non_cyclic",
            Error::Conditioning(_) => "conditioning",
            Error::InconsistentMember(_) => "inconsistent_member",
            Error::MissingDerivative(_) => "missing_derivative",
            Error::AtomCollision(_) => "atom_collision",
            Error::Io(_) => "io",
            Error::Json(_) => "schema",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
