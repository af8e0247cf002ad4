//! Solver for two-dimensional sound-soft Helmholtz scattering above a
//! compactly perturbed half-plane.
//!
//! The scattered field is represented by a double layer potential on the
//! boundary; the second-kind integral equation for its density is discretized
//! with a 16th-order panel Nystrom method. Instead of truncating the infinite
//! flat tails at a large radius, the tails are deformed into the complex plane
//! (the contour stays in the admissible class: real on the perturbed middle,
//! monotone imaginary part on the sides), where outgoing data and densities
//! decay like e^{-k Im x1}. The contour can then be cut once k·Im x1 exceeds
//! log(1/eps), leaving O(log(1/eps)) unknowns per tail.
//!
//! Modules follow the pipeline: [`specfun`] (erfc, complex Hankel functions),
//! [`contour`] (profiles, complexification, panel discretization),
//! [`kernel`] (analytically continued distance, layer kernel, incident data),
//! [`quadrature`] (Gauss-Legendre rules, adaptive corrections),
//! [`solver`] (dense assembly, LU, density diagnostics),
//! [`fieldeval`] (potential evaluation at volume targets),
//! [`experiments`] (configuration, experiment drivers, CSV/manifest output).

use num_complex::Complex64;
use thiserror::Error;

pub mod contour;
pub mod experiments;
pub mod fieldeval;
pub mod kernel;
pub mod quadrature;
pub mod solver;
pub mod specfun;

/// Errors across the solver pipeline, grouped by the failing stage.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what}: argument {at} outside the supported domain")]
    SpecFunDomain { what: &'static str, at: Complex64 },

    #[error("{what}: result overflows at argument {at}")]
    SpecFunOverflow { what: &'static str, at: Complex64 },

    #[error("square root argument {at} lies on the branch cut (-inf, 0]")]
    BranchCut { at: Complex64 },

    #[error("point pair violates the contour-class sign condition: {detail}")]
    InadmissiblePair { detail: String },

    #[error("coincident source and target on the boundary")]
    CoincidentPoints,

    #[error("invalid contour parameters: {0}")]
    ContourSpec(String),

    #[error("parameter {t} outside the truncated range [-{l_trunc}, {l_trunc}]")]
    ParameterRange { t: f64, l_trunc: f64 },

    #[error(
        "panel {panel} under-resolved: Legendre tail {tail:.3e} exceeds {threshold:.3e}; \
         increase the panel count"
    )]
    Resolution { panel: usize, tail: f64, threshold: f64 },

    #[error("unsupported quadrature order {0} (supported: 1..=64)")]
    QuadratureOrder(usize),

    #[error(
        "adaptive integration did not converge: achieved {achieved:.3e}, requested {requested:.3e}"
    )]
    QuadratureNonconvergence { best: Complex64, achieved: f64, requested: f64 },

    #[error("matrix is singular to working precision at column {col}")]
    SingularMatrix { col: usize },

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("target {at:?} lies on the boundary; evaluate a trace instead")]
    TargetOnCurve { at: (f64, f64) },

    #[error("configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code category used by the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::ContourSpec(_) => 2,
            Error::QuadratureOrder(_)
            | Error::QuadratureNonconvergence { .. }
            | Error::Resolution { .. } => 3,
            Error::SingularMatrix { .. } | Error::Shape(_) => 4,
            Error::Io(_) => 5,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
