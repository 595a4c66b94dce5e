//! Flat `key = value` configuration files.
//!
//! Known keys (all optional, with defaults):
//!
//! ```text
//! mass      target mass-norm M                     (default 1)
//! c_s       Slater coefficient                     (default 1)
//! epsilon   Hartree sign, +1 attractive            (default +1)
//! r_max     truncation radius                      (default 30)
//! n         grid nodes                             (default 3000)
//! step      flow step size                         (default 0.5)
//! tol       projected-gradient stopping norm       (default 1e-8)
//! max_iter  flow iteration cap                     (default 50000)
//! window_lo decay-fit window start                 (default r_max/3)
//! window_hi decay-fit window end                   (default 2 r_max/3)
//! damping   self-consistent mixing in (0, 1]       (default 0.9)
//! ```
//!
//! Blank lines and `#` comments are ignored. Unknown keys are rejected.

use sps_core::energy::{HartreeSign, ModelParams};
use sps_core::error::{Result, SpsError};
use sps_core::groundstate::SolverConfig;
use sps_core::radial::RadialGrid;

#[derive(Debug, Clone)]
pub struct Config {
    pub mass: f64,
    pub c_s: f64,
    pub epsilon: HartreeSign,
    pub r_max: f64,
    pub n: usize,
    pub step: f64,
    pub tol: f64,
    pub max_iter: usize,
    pub window_lo: Option<f64>,
    pub window_hi: Option<f64>,
    pub damping: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            mass: 1.0,
            c_s: 1.0,
            epsilon: HartreeSign::Attractive,
            r_max: 30.0,
            n: 3000,
            step: 0.5,
            tol: 1e-8,
            max_iter: 50_000,
            window_lo: None,
            window_hi: None,
            damping: 0.9,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                SpsError::Config(format!("line {}: expected `key = value`, got `{raw}`", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            let parse_f64 = |what: &str| -> Result<f64> {
                value.parse::<f64>().map_err(|_| {
                    SpsError::Config(format!("line {}: {what} is not a number: `{value}`", lineno + 1))
                })
            };
            match key {
                "mass" => cfg.mass = parse_f64("mass")?,
                "c_s" => cfg.c_s = parse_f64("c_s")?,
                "epsilon" => {
                    cfg.epsilon = match value {
                        "+1" | "1" => HartreeSign::Attractive,
                        "-1" => HartreeSign::Repulsive,
                        other => {
                            return Err(SpsError::Config(format!(
                                "line {}: epsilon must be +1 or -1, got `{other}`",
                                lineno + 1
                            )))
                        }
                    }
                }
                "r_max" => cfg.r_max = parse_f64("r_max")?,
                "n" => {
                    cfg.n = value.parse::<usize>().map_err(|_| {
                        SpsError::Config(format!(
                            "line {}: n is not a positive integer: `{value}`",
                            lineno + 1
                        ))
                    })?
                }
                "step" => cfg.step = parse_f64("step")?,
                "tol" => cfg.tol = parse_f64("tol")?,
                "max_iter" => {
                    cfg.max_iter = value.parse::<usize>().map_err(|_| {
                        SpsError::Config(format!(
                            "line {}: max_iter is not a positive integer: `{value}`",
                            lineno + 1
                        ))
                    })?
                }
                "window_lo" => cfg.window_lo = Some(parse_f64("window_lo")?),
                "window_hi" => cfg.window_hi = Some(parse_f64("window_hi")?),
                "damping" => cfg.damping = parse_f64("damping")?,
                unknown => {
                    return Err(SpsError::Config(format!(
                        "line {}: unknown key `{unknown}`",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SpsError::Config(format!("cannot read {}: {e}", path.display())))?;
        Config::parse(&text)
    }

    pub fn window(&self) -> (f64, f64) {
        (
            self.window_lo.unwrap_or(self.r_max / 3.0),
            self.window_hi.unwrap_or(2.0 * self.r_max / 3.0),
        )
    }

    pub fn solver_config(&self) -> Result<SolverConfig> {
        let grid = RadialGrid::uniform(self.r_max, self.n)?;
        Ok(SolverConfig {
            mass: self.mass,
            params: ModelParams::new(self.c_s, self.epsilon)?,
            grid,
            step: self.step,
            tol: self.tol,
            max_iter: self.max_iter,
        })
    }
}
