//! Floating-point verification of explicit contact forms, maps and flows.
//!
//! Points live in a real ambient space. Complex coordinates are interleaved,
//! so `zⱼ = x[2j] + i·x[2j+1]` on ℂᵈ ≅ ℝ²ᵈ. Every sampling routine takes a
//! seed and records it in its [`VerificationReport`].

use thiserror::Error;

pub mod beta_g;
pub mod contacto;
pub mod flow;
pub mod forms;
pub mod giroux;
pub mod hamiltonian;
pub mod linalg;
pub mod manifold;
pub mod prequantization;
pub mod sampling;

pub use beta_g::{contact_condition_beta_g, delta_profile, DeltaProfile};
pub use contacto::{verify_contactomorphism, AmbientMap};
pub use flow::{flow, FlowResult};
pub use forms::{AlphaSt, BetaG, BetaK, CosphereForm, ContactForm};
pub use giroux::{
    displacement_criterion, displacement_criterion_quadratic, giroux_group_law_check, giroux_map,
    min_displacement_time, verify_fiber_displaced, GirouxMap,
};
pub use hamiltonian::{hamiltonian_vector_field, reeb_vector_field, HamiltonianField};
pub use manifold::{Manifold, ProductSphere, UnitSphere};
pub use prequantization::prequantization_lift_check;

/// Tolerance for "lies on the manifold".
pub const ON_MANIFOLD_TOL: f64 = 1e-12;
/// Default central finite-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("point is outside the closed unit ball (|z| = {0})")]
    OutOfBall(f64),
    #[error("level {0} is outside (0, 1)")]
    DegenerateLevel(f64),
    #[error("the circle has no displaceable fibers; need d ≥ 2")]
    DimensionTooSmall,
    #[error("point is off the manifold (constraint residual {0:e})")]
    OffManifold(f64),
    #[error("constraint gradient vanishes; no tangent frame")]
    SingularTangentFrame,
    #[error("linear solve residual {residual:e} exceeds tolerance (condition number {condition:e})")]
    IllConditioned { residual: f64, condition: f64 },
    #[error("trajectory left the bounded region at time {0}")]
    BlowUp(f64),
    #[error("point is too close to the hyperplane excluded by the affine chart")]
    ChartSingularity,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportParameters {
    pub fd_step: Option<f64>,
    pub tolerance: f64,
    /// Lower bound the margin must strictly exceed; zero for plain sign checks.
    pub margin_floor: f64,
    pub seed: u64,
}

impl ReportParameters {
    pub fn new(tolerance: f64, seed: u64) -> Self {
        Self {
            fd_step: None,
            tolerance,
            margin_floor: 0.0,
            seed,
        }
    }

    pub fn with_fd_step(self, fd_step: f64) -> Self {
        Self {
            fd_step: Some(fd_step),
            ..self
        }
    }

    pub fn with_margin_floor(self, margin_floor: f64) -> Self {
        Self { margin_floor, ..self }
    }
}

/// Outcome of a sampled check.
///
/// `passed` is `max_residual < tolerance`, and additionally
/// `min_margin > margin_floor` whenever a margin is reported.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub samples: usize,
    pub max_residual: f64,
    pub min_margin: Option<f64>,
    pub passed: bool,
    pub parameters: ReportParameters,
}

impl VerificationReport {
    pub(crate) fn new(
        samples: usize,
        max_residual: f64,
        min_margin: Option<f64>,
        parameters: ReportParameters,
    ) -> Self {
        let passed = max_residual < parameters.tolerance && min_margin.is_none_or(|m| m > parameters.margin_floor);
        Self {
            samples,
            max_residual,
            min_margin,
            passed,
            parameters,
        }
    }
}
