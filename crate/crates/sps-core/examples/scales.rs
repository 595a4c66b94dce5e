//! Prints the characteristic scales of the minimizer across masses:
//! energy, sixth-power ratio, multiplier, and the mass-norm of the
//! unit-multiplier state. Useful for choosing grids.

use sps_core::asymptotics::alpha_mass;
use sps_core::groundstate::{minimize, SolverConfig};
use sps_core::hartree::hartree_potential;
use sps_core::radial::{integrate_3d, RadialGrid};

fn main() {
    for &(mass, r_max, n) in &[
        (6.0, 40.0, 2000usize),
        (8.0, 30.0, 1500),
        (8.0, 30.0, 3000),
        (10.0, 30.0, 1500),
        (12.0, 20.0, 2000),
    ] {
        let grid = RadialGrid::uniform(r_max, n).unwrap();
        let cfg = SolverConfig {
            tol: 1e-9,
            ..SolverConfig::new(mass, grid)
        };
        let t0 = std::time::Instant::now();
        match minimize(&cfg, None) {
            Ok(gs) => {
                let lam = gs.multiplier;
                let p = gs.normalized().expect("positive multiplier");
                let m_p = integrate_3d(&p.map(|v| v * v)).sqrt();
                let lambda_q = hartree_potential(&p).lambda_q;
                println!(
                    "M={mass:5.1} r={r_max:5.1} n={n:5} it={:6} {:6.2?}: I_M={:+.6e} I_M/M^6={:+.6e} lam={:+.5e} lam/M^4={:+.5e} |P|_2={:.4} P(0)={:.4} lam_Q(P)={:.4} alpha(P)={:.4}",
                    gs.iterations,
                    t0.elapsed(),
                    gs.i_m,
                    gs.i_m / mass.powi(6),
                    lam,
                    lam / mass.powi(4),
                    m_p,
                    p.value_at_origin(),
                    lambda_q,
                    alpha_mass(&p),
                );
            }
            Err(e) => println!("M={mass:5.1} r={r_max:5.1} n={n:5}: {e}"),
        }
    }
}
