//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, SpsError>;

#[derive(Debug, Error)]
pub enum SpsError {
    /// A caller-supplied parameter violates a precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two fields that must share a grid do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Bisection was given endpoints with identical classifications.
    #[error("bracket endpoints classify identically as {0}")]
    Bracket(&'static str),

    /// The gradient flow ran out of iterations before reaching tolerance.
    /// Carries the best iterate so the caller can inspect or resume.
    #[error("minimizer did not converge in {iterations} iterations (residual {residual:.3e})")]
    NonConvergence {
        iterations: usize,
        residual: f64,
        best: Box<crate::groundstate::GroundState>,
    },

    /// Backtracking could not find an energy-non-increasing step.
    #[error("step-size control failed after {halvings} halvings (energy {before:.6e} -> {after:.6e})")]
    StepSize {
        halvings: usize,
        before: f64,
        after: f64,
    },

    /// The ODE integrator produced a non-finite value.
    #[error("integrator failure at r = {radius:.6}")]
    Numerical { radius: f64 },

    /// The outer fixed-point iteration did not settle.
    #[error("self-consistent iteration did not converge in {outer_iterations} outer iterations (last change {last_change:.3e})")]
    SelfConsistency {
        outer_iterations: usize,
        last_change: f64,
    },

    /// One or more acceptance criteria failed in a verification run.
    #[error("{failed} acceptance criterion(s) failed")]
    AcceptanceFailed { failed: usize },

    /// Configuration file problems (unknown key, parse failure).
    #[error("configuration error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl SpsError {
    /// Stable machine-readable kind tag, used by the CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            SpsError::InvalidParameter(_) => "invalid_parameter",
            SpsError::GridMismatch(_) => "grid_mismatch",
            SpsError::Bracket(_) => "bracket",
            SpsError::NonConvergence { .. } => "non_convergence",
            SpsError::StepSize { .. } => "step_size",
            SpsError::Numerical { .. } => "numerical",
            SpsError::SelfConsistency { .. } => "self_consistency",
            SpsError::AcceptanceFailed { .. } => "acceptance_failed",
            SpsError::Config(_) => "config",
            SpsError::Io(_) => "io",
        }
    }
}
