//! Constrained energy functional, its L² gradient and the two scalings.
//!
//! The functional is
//!
//! ```text
//! E(u) = 1/2 ∫ |∇u|² - 1/4 ∫ (I₂ ∗ u²) u² + C_S/3 ∫ |u|³
//! ```
//!
//! with all integrals over R³. The kinetic term is evaluated through the
//! first-difference form of `φ = r·u` ([`crate::radial::dirichlet_form`]) and
//! the Hartree term through the symmetric cumulative-sum kernel, so
//! [`l2_gradient`] is the *exact* derivative of [`energy`] with respect to the
//! node values under the grid quadrature — central-difference checks of the
//! gradient then probe real defects rather than discretization mismatch.

use crate::error::{Result, SpsError};
use crate::hartree::hartree_potential;
use crate::io::fmt_f64;
use crate::radial::{dirichlet_form, inner, integrate_3d, laplacian_radial, RadialField};
use std::f64::consts::PI;

/// Which sign the nonlocal term carries on the right-hand side of the field
/// equation `-ΔQ + Q = ε (I₂ ∗ Q²) Q + f(Q) Q`. The attractive system is
/// `Attractive` in this convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HartreeSign {
    Attractive,
    Repulsive,
}

impl HartreeSign {
    pub fn sign(self) -> f64 {
        match self {
            HartreeSign::Attractive => 1.0,
            HartreeSign::Repulsive => -1.0,
        }
    }
}

impl std::fmt::Display for HartreeSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HartreeSign::Attractive => write!(f, "+1"),
            HartreeSign::Repulsive => write!(f, "-1"),
        }
    }
}

/// Model constants: Slater coefficient and Hartree sign.
///
/// `c_s` cannot be scaled away, so it stays an explicit parameter everywhere.
#[derive(Debug, Clone, Copy)]
pub struct ModelParams {
    pub c_s: f64,
    pub epsilon: HartreeSign,
}

impl ModelParams {
    pub fn new(c_s: f64, epsilon: HartreeSign) -> Result<Self> {
        if !(c_s.is_finite() && c_s > 0.0) {
            return Err(SpsError::InvalidParameter(format!(
                "slater coefficient must be positive, got {c_s}"
            )));
        }
        Ok(ModelParams { c_s, epsilon })
    }

    pub fn attractive(c_s: f64) -> Result<Self> {
        Self::new(c_s, HartreeSign::Attractive)
    }
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            c_s: 1.0,
            epsilon: HartreeSign::Attractive,
        }
    }
}

/// Energy split into its three contributions plus the constraint mass.
///
/// `total = kinetic - hartree + slater` holds by construction;
/// `mass = ∫ u² dx` is the squared L² norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    pub kinetic: f64,
    pub hartree: f64,
    pub slater: f64,
    pub total: f64,
    pub mass: f64,
}

impl EnergyBreakdown {
    pub fn to_json(&self) -> String {
        format!(
            "{{\"kinetic\": {}, \"hartree\": {}, \"slater\": {}, \"total\": {}, \"mass\": {}}}",
            fmt_f64(self.kinetic),
            fmt_f64(self.hartree),
            fmt_f64(self.slater),
            fmt_f64(self.total),
            fmt_f64(self.mass)
        )
    }
}

/// Evaluate the energy functional of `u`.
pub fn energy(u: &RadialField, p: &ModelParams) -> EnergyBreakdown {
    let kinetic = 2.0 * PI * dirichlet_form(u, u).expect("same grid");
    let u_sq = u.map(|v| v * v);
    let hd = hartree_potential(u);
    let hartree = 0.25 * inner(&hd.potential, &u_sq).expect("same grid");
    let slater = p.c_s / 3.0 * integrate_3d(&u.map(|v| v.abs().powi(3)));
    let mass = integrate_3d(&u_sq);
    EnergyBreakdown {
        kinetic,
        hartree,
        slater,
        total: kinetic - hartree + slater,
        mass,
    }
}

/// Unconstrained L² gradient `g = -Δu - (I₂ ∗ u²) u + C_S |u| u`.
///
/// Normalization: `d/dδ E(u + δv)|₀ = ∫ g v dx` exactly under the grid
/// quadrature. The quartic Hartree term differentiates to the full `V u`
/// because its kernel is symmetric (factor 1/4 times 4 identical terms).
pub fn l2_gradient(u: &RadialField, p: &ModelParams) -> RadialField {
    let hd = hartree_potential(u);
    l2_gradient_with_potential(u, &hd.potential, p)
}

/// Gradient with a precomputed Hartree potential of the *same* `u`.
pub(crate) fn l2_gradient_with_potential(
    u: &RadialField,
    v_of_u: &RadialField,
    p: &ModelParams,
) -> RadialField {
    let lap = laplacian_radial(u);
    let c_s = p.c_s;
    let mut out = Vec::with_capacity(u.len());
    for k in 0..u.len() {
        let uv = u.values()[k];
        out.push(-lap.values()[k] - v_of_u.values()[k] * uv + c_s * uv.abs() * uv);
    }
    RadialField::new(std::sync::Arc::clone(u.grid()), out).expect("finite gradient")
}

/// Mass-preserving dilation `u^t(r) = t^{3/2} u(t·r)`, resampled on the grid.
pub fn scale_dilate(u: &RadialField, t: f64) -> Result<RadialField> {
    if !(t.is_finite() && t > 0.0) {
        return Err(SpsError::InvalidParameter(format!(
            "dilation parameter must be positive, got {t}"
        )));
    }
    if t == 1.0 {
        return Ok(u.clone());
    }
    let amp = t.powf(1.5);
    Ok(RadialField::from_fn(u.grid(), |r| amp * u.sample(t * r)))
}

/// Mass-changing scaling `u_M(r) = M⁴ u(M²·r)`; maps unit mass-norm to `M`.
pub fn scale_mass(u: &RadialField, m: f64) -> Result<RadialField> {
    if !(m.is_finite() && m > 0.0) {
        return Err(SpsError::InvalidParameter(format!(
            "mass scaling must be positive, got {m}"
        )));
    }
    if m == 1.0 {
        return Ok(u.clone());
    }
    let amp = m.powi(4);
    let squeeze = m * m;
    Ok(RadialField::from_fn(u.grid(), |r| {
        amp * u.sample(squeeze * r)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::RadialGrid;

    fn gaussian(grid: &std::sync::Arc<RadialGrid>) -> RadialField {
        RadialField::from_fn(grid, |r| (-0.5 * r * r).exp())
    }

    #[test]
    fn zero_field_has_zero_energy() {
        let g = RadialGrid::uniform(10.0, 100).unwrap();
        let p = ModelParams::default();
        let e = energy(&RadialField::zeros(&g), &p);
        assert_eq!(e.kinetic, 0.0);
        assert_eq!(e.hartree, 0.0);
        assert_eq!(e.slater, 0.0);
        assert_eq!(e.total, 0.0);
        assert_eq!(e.mass, 0.0);
    }

    #[test]
    fn gaussian_kinetic_and_slater_closed_forms() {
        let g = RadialGrid::uniform(15.0, 3000).unwrap();
        let p = ModelParams::default();
        let e = energy(&gaussian(&g), &p);
        let pi32 = PI.powf(1.5);
        // 1/2 ∫|∇e^{-r²/2}|² = (3/4) π^{3/2}
        assert!(
            (e.kinetic - 0.75 * pi32).abs() < 1e-4,
            "kinetic {} vs {}",
            e.kinetic,
            0.75 * pi32
        );
        // 1/3 ∫ e^{-3r²/2} = (1/3)(2π/3)^{3/2}
        let slater_exact = (2.0 * PI / 3.0).powf(1.5) / 3.0;
        assert!(
            (e.slater - slater_exact).abs() < 1e-4,
            "slater {} vs {slater_exact}",
            e.slater
        );
        assert!((e.mass - pi32).abs() < 1e-4, "mass {}", e.mass);
        assert_eq!(e.total, e.kinetic - e.hartree + e.slater);
    }

    #[test]
    fn gaussian_hartree_matches_double_integral_oracle() {
        // brute-force 2-d radial quadrature of
        //   1/4 ∬ u²(x) u²(y) / (4π|x-y|) dx dy = π ∬ r² s² ρ(r) ρ(s) / max(r,s) dr ds
        // with ρ = e^{-r²}; closed form π^{3/2} / (8 √2).
        let m = 4000;
        let lim = 8.0;
        let dh = lim / m as f64;
        let rho = |x: f64| (-x * x).exp();
        let mut oracle = 0.0;
        for i in 0..m {
            let r = (i as f64 + 0.5) * dh;
            for j in 0..m {
                let s = (j as f64 + 0.5) * dh;
                oracle += r * r * s * s * rho(r) * rho(s) / r.max(s);
            }
        }
        oracle *= PI * dh * dh;
        let exact = PI.powf(1.5) / (8.0 * 2.0f64.sqrt());
        assert!((oracle - exact).abs() < 2e-5, "oracle {oracle} vs {exact}");

        let g = RadialGrid::uniform(15.0, 3000).unwrap();
        let p = ModelParams::default();
        let e = energy(&gaussian(&g), &p);
        assert!(
            (e.hartree - oracle).abs() < 1e-4,
            "hartree {} vs oracle {oracle}",
            e.hartree
        );
    }

    #[test]
    fn gradient_of_zero_is_zero() {
        let g = RadialGrid::uniform(8.0, 64).unwrap();
        let p = ModelParams::default();
        let grad = l2_gradient(&RadialField::zeros(&g), &p);
        assert!(grad.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn gradient_matches_central_difference() {
        let g = RadialGrid::uniform(10.0, 500).unwrap();
        let p = ModelParams::attractive(1.3).unwrap();
        let u = RadialField::from_fn(&g, |r| (-0.4 * r * r).exp() * (1.0 + 0.3 * r));
        let v = RadialField::from_fn(&g, |r| r * (-0.7 * r).exp());
        let grad = l2_gradient(&u, &p);
        let analytic = inner(&grad, &v).unwrap();
        let delta = 1e-5;
        let ep = energy(&u.add_scaled(&v, delta).unwrap(), &p).total;
        let em = energy(&u.add_scaled(&v, -delta).unwrap(), &p).total;
        let numeric = (ep - em) / (2.0 * delta);
        let rel = (numeric - analytic).abs() / analytic.abs().max(1e-12);
        assert!(rel < 1e-6, "directional derivative: {numeric} vs {analytic} (rel {rel:.3e})");
    }

    #[test]
    fn dilation_identity_and_mass_preservation() {
        let g = RadialGrid::uniform(16.0, 1600).unwrap();
        let u = gaussian(&g);
        let same = scale_dilate(&u, 1.0).unwrap();
        assert_eq!(same.values(), u.values());
        let stretched = scale_dilate(&u, 2.0).unwrap();
        let m0 = integrate_3d(&u.map(|v| v * v));
        let m1 = integrate_3d(&stretched.map(|v| v * v));
        let h = g.spacing();
        assert!(
            (m1 - m0).abs() < 20.0 * h * h * m0,
            "mass under dilation: {m1} vs {m0}"
        );
        assert!(scale_dilate(&u, 0.0).is_err());
        assert!(scale_dilate(&u, -2.0).is_err());
    }

    #[test]
    fn dilation_scales_energy_components() {
        // E(u^t) components pick up factors t², t, t^{3/2}
        let g = RadialGrid::uniform(24.0, 2400).unwrap();
        let p = ModelParams::default();
        let u = gaussian(&g);
        let base = energy(&u, &p);
        for t in [0.7, 1.4] {
            let e = energy(&scale_dilate(&u, t).unwrap(), &p);
            let checks = [
                (e.kinetic, t * t * base.kinetic, "kinetic"),
                (e.hartree, t * base.hartree, "hartree"),
                (e.slater, t.powf(1.5) * base.slater, "slater"),
            ];
            for (got, want, name) in checks {
                let rel = (got - want).abs() / want.abs();
                assert!(rel < 1e-3, "{name} at t={t}: {got} vs {want} (rel {rel:.2e})");
            }
        }
    }

    #[test]
    fn mass_scaling_identity_norm_and_energy_law() {
        let g = RadialGrid::uniform(24.0, 2400).unwrap();
        let p = ModelParams::default();
        // unit-mass Gaussian
        let raw = gaussian(&g);
        let u = raw.scale(1.0 / raw.l2_norm());
        let same = scale_mass(&u, 1.0).unwrap();
        assert_eq!(same.values(), u.values());

        let m = 1.5;
        let scaled = scale_mass(&u, m).unwrap();
        let norm_ratio = scaled.l2_norm() / u.l2_norm();
        assert!(
            (norm_ratio - m).abs() < 1e-3,
            "norm ratio {norm_ratio} vs {m}"
        );
        let ratio = energy(&scaled, &p).total / energy(&u, &p).total;
        let rel = (ratio - m.powi(6)).abs() / m.powi(6);
        assert!(rel < 1e-3, "energy ratio {ratio} vs {} (rel {rel:.2e})", m.powi(6));
        assert!(scale_mass(&u, 0.0).is_err());
    }

    #[test]
    fn negativity_along_dilation_path() {
        // inf over t of E(u^t) is negative for any nonzero profile; an
        // amplitude-4 Gaussian reaches negative energy at dilations whose
        // stretched profile still fits the domain
        let g = RadialGrid::uniform(24.0, 1200).unwrap();
        let p = ModelParams::default();
        let u = gaussian(&g).scale(4.0);
        let best = (2..=60)
            .map(|i| 0.05 * i as f64)
            .map(|t| energy(&scale_dilate(&u, t).unwrap(), &p).total)
            .fold(f64::INFINITY, f64::min);
        assert!(best < 0.0, "dilation sweep minimum {best} not negative");
    }

    #[test]
    fn breakdown_json_has_expected_keys() {
        let e = EnergyBreakdown {
            kinetic: 1.0,
            hartree: 0.5,
            slater: 0.25,
            total: 0.75,
            mass: 2.0,
        };
        let s = e.to_json();
        for key in ["kinetic", "hartree", "slater", "total", "mass"] {
            assert!(s.contains(&format!("\"{key}\"")), "missing {key} in {s}");
        }
    }
}
