//! Radial solver and verification harness for steady states of the
//! attractive Schrödinger–Poisson–Slater system
//!
//! ```text
//! -ΔQ + Q = VQ - C_S Q²,   -ΔV = Q²   in R³,   Q, V → 0 at infinity.
//! ```
//!
//! The crate computes the constrained minimizer of the energy
//! `E(u) = ½∫|∇u|² - ¼∫(I₂∗u²)u² + (C_S/3)∫|u|³` on the mass sphere
//! `|u|₂ = M`, cross-validates it by self-consistent ODE shooting, and
//! verifies the quantitative structure numerically: the sixth-power mass
//! scaling of the minimum energy, negativity, the `λ_Q > 1` normalization
//! gap, uniqueness of the critical shooting height, and the anomalous
//! far-field decay `Q(r) ~ r^{α/2 - 1} e^{-r}`.
//!
//! Module map:
//! - [`radial`]: grid, quadrature, radial operators
//! - [`hartree`]: nonlocal potential by cumulative integrals
//! - [`energy`] / [`rearrange`]: functional, exact discrete gradient,
//!   scalings, symmetric decreasing rearrangement
//! - [`groundstate`]: normalized gradient-flow minimizer
//! - [`shooting`]: IVP shooting, bisection, self-consistent fixed point
//! - [`asymptotics`]: decay fit, effective potential, Coulomb expansion
//! - [`acceptance`]: the end-to-end verification suite used by tests and
//!   the `verify-all` command

pub mod acceptance;
pub mod asymptotics;
pub mod energy;
pub mod error;
pub mod exec;
pub mod groundstate;
pub mod hartree;
pub mod io;
pub mod radial;
pub mod rearrange;
pub mod rng;
pub mod shooting;

#[cfg(test)]
pub(crate) mod testutil;

pub use asymptotics::{alpha_mass, decay_fit, envelope_check, potential_expansion_check, DecayFit};
pub use energy::{energy, l2_gradient, scale_dilate, scale_mass, EnergyBreakdown, HartreeSign, ModelParams};
pub use error::{Result, SpsError};
pub use groundstate::{euler_lagrange_residual, minimize, scaling_law_check, GroundState, SolverConfig};
pub use hartree::{hartree_potential, kernel_k, poisson_residual, HartreeData};
pub use radial::{integrate_3d, laplacian_radial, RadialField, RadialGrid};
pub use rearrange::decreasing_rearrangement;
pub use shooting::{
    bisect_q0, normalize_multiplier, self_consistent_solve, shoot, Classification, ShootingResult,
};
