//! Nonlocal potential of a radial density via Newton's theorem.
//!
//! For a radial source `ρ = Q²` the Coulomb-type potential
//! `V = (4π|x|)⁻¹ ∗ Q²` collapses to one-dimensional cumulative integrals,
//!
//! ```text
//! V(r) = (1/r) ∫₀^r s² ρ(s) ds + ∫_r^∞ s ρ(s) ds,
//! ```
//!
//! and the same prefix sums give the Newton decomposition
//! `-V(r) = A_Q(r) - λ_Q` with `A_Q(r) = ∫₀^r K(r,s) ρ(s) ds`,
//! `K(r,s) = s (1 - s/r)` and `λ_Q = ∫₀^∞ s ρ(s) ds`. Everything here is
//! O(n) and exact in the far field up to the dropped exponentially small
//! tail beyond `r_max`.
//!
//! The discrete kernel `w s² ρ(s) / max(r, s)` is symmetric under the volume
//! measure, which makes the Hartree energy a symmetric quadratic form in ρ —
//! the property the energy module relies on for exact gradients.

use crate::error::{Result, SpsError};
use crate::radial::{check_same_grid, laplacian_radial, RadialField};
use std::sync::Arc;

/// Potential plus its Newton decomposition for one density.
#[derive(Debug, Clone)]
pub struct HartreeData {
    /// `V = (4π|x|)⁻¹ ∗ Q²`, positive and non-increasing for `Q ≢ 0`.
    pub potential: RadialField,
    /// Interior kernel integral `A_Q(r) = ∫₀^r K(r,s) Q²(s) ds`.
    pub a_q: RadialField,
    /// Linear-weighted mass `λ_Q = ∫₀^{r_max} s Q²(s) ds`.
    pub lambda_q: f64,
}

/// Newton kernel `K(r,s) = s (1 - s/r)` for `0 <= s <= r`.
pub fn kernel_k(r: f64, s: f64) -> Result<f64> {
    if r <= 0.0 || !(0.0..=r).contains(&s) {
        return Err(SpsError::InvalidParameter(format!(
            "kernel_k requires 0 <= s <= r with r > 0, got r = {r}, s = {s}"
        )));
    }
    Ok(s * (1.0 - s / r))
}

/// Evaluate the potential, `A_Q` and `λ_Q` of `Q` by cumulative sums.
pub fn hartree_potential(q: &RadialField) -> HartreeData {
    let grid = q.grid();
    let n = grid.len();
    let nodes = grid.nodes();
    let weights = grid.weights();
    let rho: Vec<f64> = q.values().iter().map(|&v| v * v).collect();

    // prefix sums of s·ρ and s²·ρ
    let mut m1 = vec![0.0; n];
    let mut m2 = vec![0.0; n];
    let mut acc1 = 0.0;
    let mut acc2 = 0.0;
    for k in 0..n {
        let s = nodes[k];
        acc1 += weights[k] * s * rho[k];
        acc2 += weights[k] * s * s * rho[k];
        m1[k] = acc1;
        m2[k] = acc2;
    }
    // suffix sum of s·ρ, summed small-to-large for tail accuracy
    let mut tail = vec![0.0; n];
    let mut acc = 0.0;
    for k in (0..n).rev() {
        tail[k] = acc;
        acc += weights[k] * nodes[k] * rho[k];
    }

    let lambda_q = m1[n - 1];
    let mut v = vec![0.0; n];
    let mut a = vec![0.0; n];
    for k in 0..n {
        v[k] = m2[k] / nodes[k] + tail[k];
        a[k] = m1[k] - m2[k] / nodes[k];
    }
    HartreeData {
        potential: RadialField::from_values_unchecked(Arc::clone(grid), v),
        a_q: RadialField::from_values_unchecked(Arc::clone(grid), a),
        lambda_q,
    }
}

/// Max interior-node self-consistency defect `|ΔV + Q²|`.
///
/// The last node is skipped: its stencil touches the Dirichlet ghost and
/// reflects the truncation, not the field equation.
pub fn poisson_residual(q: &RadialField, v: &RadialField) -> Result<f64> {
    check_same_grid(q, v, "poisson_residual")?;
    let lap = laplacian_radial(v);
    let worst = lap
        .values()
        .iter()
        .zip(q.values())
        .take(q.len() - 1)
        .map(|(&l, &qv)| (l + qv * qv).abs())
        .fold(0.0, f64::max);
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{integrate_3d, radial_derivative, RadialGrid};
    use std::f64::consts::PI;

    /// Closed-form potential of the uniform unit ball (ρ = 1 on [0,1]):
    /// V(r) = 1/2 - r²/6 inside, 1/(3r) outside.
    fn ball_potential(r: f64) -> f64 {
        if r <= 1.0 {
            0.5 - r * r / 6.0
        } else {
            1.0 / (3.0 * r)
        }
    }

    #[test]
    fn kernel_values() {
        assert_eq!(kernel_k(2.0, 2.0).unwrap(), 0.0);
        assert_eq!(kernel_k(2.0, 0.0).unwrap(), 0.0);
        assert!((kernel_k(2.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(kernel_k(2.0, 2.5).is_err());
        assert!(kernel_k(0.0, 0.0).is_err());
        assert!(kernel_k(-1.0, -2.0).is_err());
    }

    #[test]
    fn kernel_nonnegative_scan() {
        for i in 1..40 {
            let r = 0.1 * i as f64;
            for j in 0..=i {
                let s = 0.1 * j as f64;
                assert!(kernel_k(r, s).unwrap() >= 0.0, "K({r},{s}) < 0");
            }
        }
    }

    #[test]
    fn uniform_ball_matches_closed_form() {
        let g = RadialGrid::uniform(3.0, 300).unwrap();
        let q = RadialField::from_fn(&g, |r| if r <= 1.0 { 1.0 } else { 0.0 });
        let hd = hartree_potential(&q);
        for (probe, want) in [(0.0, 0.5), (1.0, 1.0 / 3.0), (2.0, 1.0 / 6.0)] {
            let got = if probe == 0.0 {
                hd.potential.value_at_origin()
            } else {
                hd.potential.values()[g.nearest_index(probe)]
            };
            assert!(
                (got - want).abs() < 5e-3,
                "V({probe}) = {got}, expected {want}"
            );
        }
        // direct quadrature oracle of the cumulative formulas at a generic radius
        let r_probe = g.nodes()[g.nearest_index(0.7)];
        let oracle = {
            let inner = crate::testutil::adaptive_simpson(
                &|s: f64| if s <= 1.0 { s * s } else { 0.0 },
                0.0,
                r_probe,
                1e-12,
            );
            let outer = crate::testutil::adaptive_simpson(
                &|s: f64| if s <= 1.0 { s } else { 0.0 },
                r_probe,
                3.0,
                1e-12,
            );
            inner / r_probe + outer
        };
        assert!((oracle - ball_potential(r_probe)).abs() < 1e-9, "oracle sanity");
        let got = hd.potential.values()[g.nearest_index(0.7)];
        assert!((got - oracle).abs() < 5e-3, "V(0.7) = {got} vs oracle {oracle}");
    }

    #[test]
    fn uniform_ball_lambda_q_equals_central_value() {
        let g = RadialGrid::uniform(3.0, 300).unwrap();
        let q = RadialField::from_fn(&g, |r| if r <= 1.0 { 1.0 } else { 0.0 });
        let hd = hartree_potential(&q);
        assert!((hd.lambda_q - 0.5).abs() < 5e-3, "lambda_q {}", hd.lambda_q);
        // A_Q vanishes at the first node, which pins V there to λ_Q exactly
        assert!(hd.a_q.values()[0].abs() < 1e-15);
        assert!((hd.potential.values()[0] - hd.lambda_q).abs() < 1e-12);
    }

    #[test]
    fn zero_density_gives_zero_everything() {
        let g = RadialGrid::uniform(5.0, 100).unwrap();
        let q = RadialField::zeros(&g);
        let hd = hartree_potential(&q);
        assert!(hd.potential.values().iter().all(|&v| v == 0.0));
        assert!(hd.a_q.values().iter().all(|&v| v == 0.0));
        assert_eq!(hd.lambda_q, 0.0);
        assert_eq!(poisson_residual(&q, &hd.potential).unwrap(), 0.0);
    }

    #[test]
    fn newton_identity_gaussian() {
        let g = RadialGrid::uniform(20.0, 2000).unwrap();
        let q = RadialField::from_fn(&g, |r| (-0.5 * r * r).exp());
        let hd = hartree_potential(&q);
        let worst = hd
            .potential
            .values()
            .iter()
            .zip(hd.a_q.values())
            .map(|(&v, &a)| (-v - a + hd.lambda_q).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-12, "Newton identity defect {worst}");
    }

    #[test]
    fn potential_positive_and_nonincreasing() {
        let g = RadialGrid::uniform(15.0, 900).unwrap();
        let q = RadialField::from_fn(&g, |r| (-(r - 2.0) * (r - 2.0)).exp());
        let hd = hartree_potential(&q);
        let v = hd.potential.values();
        assert!(v.iter().all(|&x| x > 0.0), "V must stay positive");
        for k in 1..v.len() {
            assert!(v[k] <= v[k - 1] + 1e-15, "V must be non-increasing at {k}");
        }
    }

    #[test]
    fn weighted_slope_monotone() {
        // r² V'(r) is non-increasing for any density
        let g = RadialGrid::uniform(12.0, 1200).unwrap();
        let q = RadialField::from_fn(&g, |r| (-0.4 * r * r).exp() * (1.0 + 0.5 * r));
        let hd = hartree_potential(&q);
        let dv = radial_derivative(&hd.potential);
        let flux: Vec<f64> = g
            .nodes()
            .iter()
            .zip(dv.values())
            .map(|(&r, &d)| r * r * d)
            .collect();
        // skip the last node: one-sided derivative there sees the ghost.
        // O(h²) quadrature wiggle is allowed on top of the exact monotonicity.
        for k in 1..flux.len() - 1 {
            assert!(
                flux[k] <= flux[k - 1] + 1e-6,
                "r²V' increased at node {k}: {} -> {}",
                flux[k - 1],
                flux[k]
            );
        }
    }

    #[test]
    fn compact_support_tail_is_exactly_coulomb() {
        let g = RadialGrid::uniform(4.0, 400).unwrap();
        let q = RadialField::from_fn(&g, |r| if r <= 1.0 { 1.0 } else { 0.0 });
        let hd = hartree_potential(&q);
        let alpha = integrate_3d(&q.map(|v| v * v)) / (4.0 * PI);
        for (k, &r) in g.nodes().iter().enumerate() {
            if r > 1.0 {
                let want = alpha / r;
                assert!(
                    (hd.potential.values()[k] - want).abs() < 1e-12,
                    "exterior V({r}) = {} vs {want}",
                    hd.potential.values()[k]
                );
            }
        }
    }

    #[test]
    fn poisson_residual_uniform_ball() {
        let g = RadialGrid::uniform(3.0, 300).unwrap();
        let q = RadialField::from_fn(&g, |r| if r <= 1.0 { 1.0 } else { 0.0 });
        let hd = hartree_potential(&q);
        let h = g.spacing();
        // O(h) spike allowed near the density jump, O(h²) elsewhere
        let lap = laplacian_radial(&hd.potential);
        for (k, &r) in g.nodes().iter().enumerate().take(g.len() - 1) {
            let defect = (lap.values()[k] + q.values()[k] * q.values()[k]).abs();
            let tol = if (r - 1.0).abs() < 2.0 * h { 1.5 } else { 40.0 * h * h };
            assert!(defect < tol, "node {k} (r={r}): defect {defect}");
        }
    }

    #[test]
    fn poisson_residual_gaussian() {
        let g = RadialGrid::uniform(12.0, 1200).unwrap();
        let q = RadialField::from_fn(&g, |r| (-0.5 * r * r).exp());
        let hd = hartree_potential(&q);
        let res = poisson_residual(&q, &hd.potential).unwrap();
        assert!(res <= 1e-3, "Gaussian Poisson residual {res}");
    }

    #[test]
    fn poisson_residual_rejects_grid_mismatch() {
        let g1 = RadialGrid::uniform(3.0, 300).unwrap();
        let g2 = RadialGrid::uniform(4.0, 300).unwrap();
        let q = RadialField::zeros(&g1);
        let v = RadialField::zeros(&g2);
        assert!(poisson_residual(&q, &v).is_err());
    }
}
