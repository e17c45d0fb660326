//! Error type shared by every numerical operation in the crate.
//!
//! No operation lets a NaN or infinity escape silently: anything that cannot
//! be computed to its contract comes back as a [`MathError`].

use thiserror::Error;

/// Errors raised by the special-function, modular-form and L-function kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MathError {
    /// Evaluation requested exactly at (or too close to) a pole.
    #[error("pole at {location}")]
    Pole { location: String },

    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {reason}")]
    Domain { reason: String },

    /// Evaluation on a branch point / branch cut (e.g. polylogarithm at x ∈ ℤ).
    #[error("branch point: {reason}")]
    Branch { reason: String },

    /// No available regime reaches the requested tolerance.
    #[error("accuracy not attained: estimated error {estimate:e} > tolerance {tolerance:e} ({context})")]
    Accuracy {
        estimate: f64,
        tolerance: f64,
        context: String,
    },

    /// A truncated sum cannot meet the requested tolerance at the given radius.
    #[error("convergence failure: tail bound {tail_bound:e} > tolerance {tolerance:e} at radius {radius}")]
    Convergence {
        tail_bound: f64,
        tolerance: f64,
        radius: u32,
    },

    /// Result would exceed the representable range (reported, never wrapped).
    #[error("overflow: {reason}")]
    Overflow { reason: String },

    /// Two Richardson levels of a finite-difference operator disagree.
    #[error("finite-difference step error: levels differ by {disagreement:e} at h={step:e}")]
    Step { disagreement: f64, step: f64 },

    /// Point-pair kernel evaluated at coincident points (x = 1).
    #[error("singularity: kernel argument at coincident points")]
    Singularity,

    /// Some translate of z falls inside the pole floor around τ.
    #[error("orbit proximity: a translate of z lies within {x_arg} of the kernel singularity")]
    OrbitProximity { x_arg: f64 },

    /// |J(τ) − J(z)| below the configured pole floor.
    #[error("pole proximity: |J(tau)-J(z)| = {separation:e} below floor {floor:e}")]
    PoleProximity { separation: f64, floor: f64 },

    /// The point z lies on (or numerically on) the singular set 𝒮.
    #[error("singular set: J(z) within {distance:e} of the real ray [984, ∞)")]
    SingularSet { distance: f64 },

    /// Parameter excluded by the operation (e.g. w ∈ {1/2, s, 2−s}).
    #[error("parameter excluded: {reason}")]
    Parameter { reason: String },

    /// Residual fit rejected (non-monotone or singular system).
    #[error("fit error: {reason}")]
    Fit { reason: String },
}

impl MathError {
    pub fn pole(location: impl Into<String>) -> Self {
        MathError::Pole {
            location: location.into(),
        }
    }

    pub fn domain(reason: impl Into<String>) -> Self {
        MathError::Domain {
            reason: reason.into(),
        }
    }

    pub fn branch(reason: impl Into<String>) -> Self {
        MathError::Branch {
            reason: reason.into(),
        }
    }

    pub fn parameter(reason: impl Into<String>) -> Self {
        MathError::Parameter {
            reason: reason.into(),
        }
    }

    pub fn overflow(reason: impl Into<String>) -> Self {
        MathError::Overflow {
            reason: reason.into(),
        }
    }

    pub fn accuracy(estimate: f64, tolerance: f64, context: impl Into<String>) -> Self {
        MathError::Accuracy {
            estimate,
            tolerance,
            context: context.into(),
        }
    }

    pub fn fit(reason: impl Into<String>) -> Self {
        MathError::Fit {
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, MathError>;
