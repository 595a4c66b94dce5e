//! End-to-end verification suite.
//!
//! Twelve criteria cover the quantitative structure of the system: the
//! sixth-power mass scaling of the minimum energy, strict negativity, the
//! Euler–Lagrange residual after multiplier normalization, agreement between
//! the minimizer and the shooting fixed point, the `λ_Q > 1` gap, the
//! anomalous decay exponent, the Coulomb expansion of the potential, the
//! `e^{-r/2}` envelope, the rearrangement inequalities, the exactness of the
//! discrete gradient, dilation criticality, and the uniform-ball potential
//! oracle. Each criterion reports one pass/fail line with the measured
//! numbers; the same functions back the `verify-all` command and the
//! acceptance test target.

use crate::asymptotics::{
    alpha_mass, decay_fit, envelope_check_window, potential_expansion_check_window, DRIFT_TOLERANCE,
};
use crate::energy::{energy, l2_gradient, HartreeSign, ModelParams};
use crate::error::Result;
use crate::groundstate::{
    euler_lagrange_residual, minimize, scaling_law_check, GroundState, SolverConfig,
    SCALING_TOLERANCE,
};
use crate::hartree::hartree_potential;
use crate::io::json_escape;
use crate::radial::{inner, integrate_3d, RadialField, RadialGrid};
use crate::rearrange::decreasing_rearrangement;
use crate::rng::SplitMix64;
use crate::shooting::{scan_q0, self_consistent_solve};
use std::sync::Arc;

/// Verdict and evidence for one criterion.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "[{:>2}] {} {:<22} {}",
            self.index,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.details
        )
    }

    pub fn to_json(&self) -> String {
        format!(
            "{{\"index\": {}, \"name\": \"{}\", \"passed\": {}, \"details\": \"{}\"}}",
            self.index,
            self.name,
            self.passed,
            json_escape(&self.details)
        )
    }
}

impl std::fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.line())
    }
}

/// Reference mass for the shared solves.
///
/// The unit-multiplier state carries mass-norm ~8.4, and minimizers widen
/// like `M⁻²` below it, so masses of order one produce states far wider than
/// the production truncation radius. Mass 9 sits in the well-resolved window
/// of the `r_max = 30` grid and keeps the multiplier above one, so the
/// unit-multiplier rescaling samples strictly inside the domain. (The
/// rescaled verification state is the same for every resolvable mass by the
/// exact scaling of the problem.)
pub const REFERENCE_MASS: f64 = 9.0;

/// Ground states shared across criteria (solved once, in parallel).
pub struct AcceptanceContext {
    pub params: ModelParams,
    /// r_max = 30, n = 3000 — the default production grid.
    pub base: GroundState,
    pub base_normalized: RadialField,
    /// r_max = 30, n = 9000 — refined spacing for the residual/cross checks.
    pub fine: GroundState,
    pub fine_normalized: RadialField,
    /// r_max = 40, n = 8000 — decay-law grid.
    pub wide: GroundState,
    pub wide_normalized: RadialField,
    /// r_max = 60, n = 6000 — doubled domain for the expansion stability check.
    pub deep: GroundState,
    pub deep_normalized: RadialField,
}

impl AcceptanceContext {
    pub fn build() -> Result<Self> {
        let params = ModelParams::default();
        let shapes = vec![(30.0, 3000usize), (30.0, 9000), (40.0, 8000), (60.0, 6000)];
        let solved = crate::exec::par_map(shapes, |(r_max, n)| -> Result<GroundState> {
            let grid = RadialGrid::uniform(r_max, n)?;
            minimize(&SolverConfig::new(REFERENCE_MASS, grid), None)
        });
        let mut it = solved.into_iter();
        let base = it.next().unwrap()?;
        let fine = it.next().unwrap()?;
        let wide = it.next().unwrap()?;
        let deep = it.next().unwrap()?;
        Ok(AcceptanceContext {
            params,
            base_normalized: base.normalized()?,
            fine_normalized: fine.normalized()?,
            wide_normalized: wide.normalized()?,
            deep_normalized: deep.normalized()?,
            base,
            fine,
            wide,
            deep,
        })
    }

    /// Criterion 1: `I_M / M⁶` constant across the masses 0.5, 1, 2 on the production
    /// grid, at `C_S = 1`, within 0.5%.
    ///
    /// Those masses put the minimizer's width (which grows like `M⁻²`
    /// towards ~350 length units at mass 1) far beyond `r_max = 30`, so the
    /// solver honestly returns truncation-limited states there and the
    /// ratios cannot agree; the run is reported as-is. The same sweep over
    /// masses inside the resolvable window of the identical grid is attached
    /// as supplementary evidence that the sixth-power law itself holds.
    pub fn criterion_scaling_law(&self) -> Result<CriterionOutcome> {
        let grid = RadialGrid::uniform(30.0, 3000)?;
        let cfg = SolverConfig::new(1.0, grid);
        let report = scaling_law_check(&[0.5, 1.0, 2.0], &cfg)?;
        let ratios: Vec<String> = report
            .rows
            .iter()
            .map(|r| format!("I_{}/M^6 = {:+.4e}", r.mass, r.ratio))
            .collect();
        let resolved = scaling_law_check(&[6.0, 8.0, 10.0], &cfg)?;
        let resolved_ratios: Vec<String> = resolved
            .rows
            .iter()
            .map(|r| format!("I_{}/M^6 = {:+.6e}", r.mass, r.ratio))
            .collect();
        Ok(CriterionOutcome {
            index: 1,
            name: "scaling-law",
            passed: report.pass,
            details: format!(
                "pinned masses: {}; spread {:.2e} (tolerance {:.1e}). Resolvable masses on the same grid: {}; spread {:.2e} -> {}",
                ratios.join(", "),
                report.max_rel_deviation,
                SCALING_TOLERANCE,
                resolved_ratios.join(", "),
                resolved.max_rel_deviation,
                if resolved.pass { "law holds" } else { "law violated" }
            ),
        })
    }

    /// Criterion 2: Converged minimum energy at mass 1 is strictly negative.
    ///
    /// The mass-1 state is ~350 length units wide with decay rate
    /// `√λ₁ ≈ 0.014`, so the solve runs on a large sparse grid sized to hold
    /// it, seeded near the optimal width. The result is cross-checked
    /// against the sixth-power rescaling of the reference solve.
    pub fn criterion_negativity(&self) -> Result<CriterionOutcome> {
        let grid = RadialGrid::uniform(1200.0, 6000)?;
        let cfg = SolverConfig {
            step: 2000.0,
            tol: 1e-10,
            ..SolverConfig::new(1.0, Arc::clone(&grid))
        };
        let seed_width = 200.0;
        let seed = RadialField::from_fn(&grid, |r| (-0.5 * (r / seed_width).powi(2)).exp());
        let gs = minimize(&cfg, Some(&seed))?;
        let predicted = self.base.i_m / REFERENCE_MASS.powi(6);
        let agreement = (gs.i_m - predicted).abs() / predicted.abs();
        Ok(CriterionOutcome {
            index: 2,
            name: "negativity",
            passed: gs.i_m < 0.0,
            details: format!(
                "I_1 = {:+.6e} (residual {:.1e}, {} iterations); sixth-power rescaling of the mass-{} solve predicts {:+.6e} (relative gap {:.1e})",
                gs.i_m, gs.residual, gs.iterations, REFERENCE_MASS, predicted, agreement
            ),
        })
    }

    /// Criterion 3: Euler–Lagrange residual at unit multiplier after rescaling.
    pub fn criterion_euler_lagrange(&self) -> Result<CriterionOutcome> {
        let res = euler_lagrange_residual(&self.fine_normalized, 1.0, &self.params);
        Ok(CriterionOutcome {
            index: 3,
            name: "euler-lagrange",
            passed: res <= 1e-4,
            details: format!("normalized-state residual {res:.3e} (threshold 1e-4)"),
        })
    }

    /// Criterion 4: Shooting fixed point matches the minimizer; the critical height is
    /// the only classification change on `(0, 3 q0*]`.
    pub fn criterion_cross_solver(&self) -> Result<CriterionOutcome> {
        let grid = self.fine_normalized.grid();
        let scf = self_consistent_solve(&self.params, grid, 0.9, Some(&self.fine_normalized))?;
        let diff = scf.q.max_abs_diff(&self.fine_normalized)?;
        let q0s: Vec<f64> = (1..=50).map(|i| 3.0 * scf.q0 * i as f64 / 50.0).collect();
        let shots = scan_q0(&q0s, &scf.potential, &self.params)?;
        let changes = shots
            .windows(2)
            .filter(|w| w[0].classification != w[1].classification)
            .count();
        let passed = diff <= 1e-4 && changes == 1;
        Ok(CriterionOutcome {
            index: 4,
            name: "cross-solver",
            passed,
            details: format!(
                "max node difference {diff:.3e} (threshold 1e-4), q0* = {:.8}, {} classification change(s) over 50 shots in {} outer iterations",
                scf.q0, changes, scf.outer_iterations
            ),
        })
    }

    /// Criterion 5: `λ_Q > 1` for the unit-multiplier state.
    pub fn criterion_lambda_q(&self) -> Result<CriterionOutcome> {
        let lambda_q = hartree_potential(&self.base_normalized).lambda_q;
        Ok(CriterionOutcome {
            index: 5,
            name: "lambda-q",
            passed: lambda_q >= 1.01,
            details: format!("lambda_Q = {lambda_q:.6} (threshold 1.01)"),
        })
    }

    /// Criterion 6: Decay law on the wide grid: flat compensated profile with the
    /// correct exponent, clearly tilted with the wrong-sign exponent.
    pub fn criterion_decay_law(&self) -> Result<CriterionOutcome> {
        let window = (10.0, 20.0);
        let right = decay_fit(&self.wide_normalized, HartreeSign::Attractive, window)?;
        let wrong = decay_fit(&self.wide_normalized, HartreeSign::Repulsive, window)?;
        let separation = wrong.drift.abs() / right.drift.abs().max(1e-12);
        let passed = right.drift.abs() <= DRIFT_TOLERANCE
            && right.limit_estimate > 0.0
            && right.limit_estimate.is_finite()
            && separation >= 5.0;
        Ok(CriterionOutcome {
            index: 6,
            name: "decay-law",
            passed,
            details: format!(
                "alpha = {:.6}, drift {:.3e} (limit {:.6}); wrong-sign drift {:.3e} ({}x)",
                right.alpha,
                right.drift,
                right.limit_estimate,
                wrong.drift,
                separation as i64
            ),
        })
    }

    /// Criterion 7: `(V - α/r) r²` bounded on the tail and stable under doubling the
    /// domain. For an exponentially decaying state both statistics sit at
    /// the round-off floor, so stability is measured above an absolute
    /// floor of 1e-8.
    pub fn criterion_potential_expansion(&self) -> Result<CriterionOutcome> {
        let floor = 1e-8;
        let stat = |q: &RadialField| {
            let v = hartree_potential(q).potential;
            let r_max = q.grid().r_max();
            potential_expansion_check_window(&v, alpha_mass(q), (0.5 * r_max, r_max)).v_remainder
        };
        let b30 = stat(&self.base_normalized);
        let b60 = stat(&self.deep_normalized);
        // a remainder that is already exponentially small may keep shrinking
        // under domain doubling; only growth past 20% (above the floor)
        // would contradict the r^{-2} bound
        let stable = b60 <= (1.2 * b30).max(floor);
        let bounded = b30 <= 1e-3 && b60 <= 1e-3;
        Ok(CriterionOutcome {
            index: 7,
            name: "potential-expansion",
            passed: bounded && stable,
            details: format!(
                "max |(V - a/r) r^2|: {b30:.3e} on [15,30], {b60:.3e} on [30,60] after doubling r_max (growth floor {floor:.0e})"
            ),
        })
    }

    /// Criterion 8: `Q/G` with `G = r⁻¹ e^{-r/2}` non-increasing over the tail.
    pub fn criterion_envelope(&self) -> Result<CriterionOutcome> {
        let r_max = self.base_normalized.grid().r_max();
        let ok = envelope_check_window(&self.base_normalized, (0.5 * r_max, r_max));
        Ok(CriterionOutcome {
            index: 8,
            name: "envelope",
            passed: ok,
            details: format!("Q/(r^-1 e^(-r/2)) non-increasing on [{}, {}]: {ok}", 0.5 * r_max, r_max),
        })
    }

    pub fn run_all(&self, seed: u64) -> Result<Vec<CriterionOutcome>> {
        Ok(vec![
            self.criterion_scaling_law()?,
            self.criterion_negativity()?,
            self.criterion_euler_lagrange()?,
            self.criterion_cross_solver()?,
            self.criterion_lambda_q()?,
            self.criterion_decay_law()?,
            self.criterion_potential_expansion()?,
            self.criterion_envelope()?,
            criterion_rearrangement_triple(seed)?,
            criterion_gradient_oracle(seed)?,
            self.criterion_dilation_criticality()?,
            criterion_hartree_oracle()?,
        ])
    }

    /// Criterion 11: Stationarity of the energy along the mass-preserving dilation at
    /// the minimizer: `K - H/4 + S₃/2 = 0` with `K = ∫|∇Q|²`,
    /// `H = ∫(I₂∗Q²)Q²`, `S₃ = C_S ∫|Q|³`.
    pub fn criterion_dilation_criticality(&self) -> Result<CriterionOutcome> {
        let e = energy(&self.base.q, &self.params);
        let k = 2.0 * e.kinetic;
        let h = 4.0 * e.hartree;
        let s3 = 3.0 * e.slater;
        let defect = (k - h / 4.0 + s3 / 2.0).abs();
        let scale = k + h + s3;
        Ok(CriterionOutcome {
            index: 11,
            name: "dilation-criticality",
            passed: defect <= 1e-3 * scale,
            details: format!(
                "|K - H/4 + S3/2| = {:.3e} against 1e-3 (K + H + S3) = {:.3e}",
                defect,
                1e-3 * scale
            ),
        })
    }
}

/// Smooth nonnegative test profile: a few Gaussian bumps at random centers.
fn random_bump_profile(rng: &mut SplitMix64, grid: &Arc<RadialGrid>, signed: bool) -> RadialField {
    let bumps = 2 + (rng.next_u64() % 4) as usize;
    let r_max = grid.r_max();
    let mut shapes = Vec::with_capacity(bumps);
    for _ in 0..bumps {
        let amp = rng.range(0.2, 1.2) * if signed && rng.next_f64() < 0.5 { -1.0 } else { 1.0 };
        let center = rng.range(0.0, 0.55 * r_max);
        let width = rng.range(0.4, 1.5);
        shapes.push((amp, center, width));
    }
    RadialField::from_fn(grid, |r| {
        shapes
            .iter()
            .map(|(a, c, w)| a * (-((r - c) / w).powi(2)).exp())
            .sum()
    })
}

/// Criterion 9: Rearrangement triple on seeded random nonnegative profiles: kinetic
/// never rises, the Hartree term never falls, the quadratic and cubic norms
/// are preserved, and the energy never rises.
pub fn criterion_rearrangement_triple(seed: u64) -> Result<CriterionOutcome> {
    let grid = RadialGrid::uniform(12.0, 1200)?;
    let p = ModelParams::default();
    let mut rng = SplitMix64::new(seed);
    let profiles: Vec<RadialField> = (0..100)
        .map(|_| random_bump_profile(&mut rng, &grid, false))
        .collect();
    let results = crate::exec::par_map(profiles, move |u| {
        let r = decreasing_rearrangement(&u);
        let eu = energy(&u, &p);
        let er = energy(&r, &p);
        let l2 = (er.mass - eu.mass).abs();
        let l3 = (integrate_3d(&r.map(|v| v.abs().powi(3)))
            - integrate_3d(&u.map(|v| v.abs().powi(3))))
        .abs();
        let kinetic_ok = er.kinetic <= eu.kinetic + 1e-12 * eu.kinetic.max(1.0);
        let hartree_ok = er.hartree >= eu.hartree - 1e-12 * eu.hartree.max(1.0);
        let energy_ok = er.total <= eu.total + 1e-12 * eu.total.abs().max(1.0);
        (l2, l3, kinetic_ok, hartree_ok, energy_ok)
    });
    let mut worst_l2 = 0.0f64;
    let mut worst_l3 = 0.0f64;
    let mut failures = 0usize;
    for (l2, l3, k, h, e) in &results {
        worst_l2 = worst_l2.max(*l2);
        worst_l3 = worst_l3.max(*l3);
        if !(*k && *h && *e) || *l2 > 1e-8 || *l3 > 1e-8 {
            failures += 1;
        }
    }
    Ok(CriterionOutcome {
        index: 9,
        name: "rearrangement-triple",
        passed: failures == 0,
        details: format!(
            "100 seeded profiles, {failures} failure(s); worst norm drift L2 {worst_l2:.2e}, L3 {worst_l3:.2e} (threshold 1e-8)"
        ),
    })
}

/// Criterion 10: Central-difference directional-derivative check of the gradient on
/// seeded random pairs.
pub fn criterion_gradient_oracle(seed: u64) -> Result<CriterionOutcome> {
    let grid = RadialGrid::uniform(10.0, 800)?;
    let p = ModelParams::default();
    let mut rng = SplitMix64::new(seed ^ 0x9e3779b97f4a7c15);
    let pairs: Vec<(RadialField, RadialField)> = (0..20)
        .map(|_| {
            (
                random_bump_profile(&mut rng, &grid, true),
                random_bump_profile(&mut rng, &grid, true),
            )
        })
        .collect();
    let delta = 1e-5;
    let rels = crate::exec::par_map(pairs, move |(u, v)| {
        let analytic = inner(&l2_gradient(&u, &p), &v).expect("same grid");
        let ep = energy(&u.add_scaled(&v, delta).expect("same grid"), &p).total;
        let em = energy(&u.add_scaled(&v, -delta).expect("same grid"), &p).total;
        let numeric = (ep - em) / (2.0 * delta);
        (numeric - analytic).abs() / analytic.abs().max(1e-8)
    });
    let worst = rels.iter().cloned().fold(0.0, f64::max);
    Ok(CriterionOutcome {
        index: 10,
        name: "gradient-oracle",
        passed: worst <= 1e-6,
        details: format!("20 seeded pairs, worst relative error {worst:.3e} (threshold 1e-6)"),
    })
}

/// Criterion 12: Uniform-ball potential against closed forms, and the Newton identity
/// `-V = A_Q - λ_Q` on a Gaussian.
pub fn criterion_hartree_oracle() -> Result<CriterionOutcome> {
    let grid = RadialGrid::uniform(3.0, 300)?;
    let ball = RadialField::from_fn(&grid, |r| if r <= 1.0 { 1.0 } else { 0.0 });
    let hd = hartree_potential(&ball);
    let probes = [
        (hd.potential.value_at_origin(), 0.5, "V(0)"),
        (hd.potential.values()[grid.nearest_index(1.0)], 1.0 / 3.0, "V(1)"),
        (hd.potential.values()[grid.nearest_index(2.0)], 1.0 / 6.0, "V(2)"),
    ];
    let ball_worst = probes
        .iter()
        .map(|(got, want, _)| (got - want).abs())
        .fold(0.0, f64::max);

    let g2 = RadialGrid::uniform(20.0, 2000)?;
    let gauss = RadialField::from_fn(&g2, |r| (-0.5 * r * r).exp());
    let hg = hartree_potential(&gauss);
    let newton_worst = hg
        .potential
        .values()
        .iter()
        .zip(hg.a_q.values())
        .map(|(&v, &a)| (-v - a + hg.lambda_q).abs())
        .fold(0.0, f64::max);

    Ok(CriterionOutcome {
        index: 12,
        name: "hartree-oracle",
        passed: ball_worst <= 5e-3 && newton_worst <= 1e-6,
        details: format!(
            "uniform ball worst |V - exact| = {ball_worst:.3e} (threshold 5e-3); Gaussian Newton identity defect {newton_worst:.3e} (threshold 1e-6)"
        ),
    })
}
