//! Command-line driver.
//!
//! ```text
//! sps <solve|shoot|scaling|asymptotics|verify-all> [--config PATH] [--out DIR] [--seed N]
//! ```
//!
//! Exit codes: 0 success, 1 solver non-convergence or runtime failure,
//! 2 invalid configuration or usage. Every error also emits one
//! machine-readable JSON line on stderr.

mod config;

use config::Config;
use sps_core::asymptotics::{
    alpha_mass, decay_fit, envelope_check, potential_expansion_check,
};
use sps_core::error::{Result, SpsError};
use sps_core::groundstate::{minimize, scaling_law_check};
use sps_core::hartree::hartree_potential;
use sps_core::io::json_escape;
use sps_core::shooting::{bisect_q0, find_bracket};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

struct Cli {
    command: String,
    config_path: Option<PathBuf>,
    out_dir: PathBuf,
    seed: u64,
}

fn usage() -> String {
    "usage: sps <solve|shoot|scaling|asymptotics|verify-all> [--config PATH] [--out DIR] [--seed N]"
        .to_string()
}

fn parse_args(args: &[String]) -> Result<Cli> {
    let mut command = None;
    let mut config_path = None;
    let mut out_dir = PathBuf::from(".");
    let mut seed = 42u64;
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--config" => {
                let v = it
                    .next()
                    .ok_or_else(|| SpsError::Config("--config needs a path".into()))?;
                config_path = Some(PathBuf::from(v));
            }
            "--out" => {
                let v = it
                    .next()
                    .ok_or_else(|| SpsError::Config("--out needs a directory".into()))?;
                out_dir = PathBuf::from(v);
            }
            "--seed" => {
                let v = it
                    .next()
                    .ok_or_else(|| SpsError::Config("--seed needs an integer".into()))?;
                seed = v
                    .parse()
                    .map_err(|_| SpsError::Config(format!("bad seed `{v}`")))?;
            }
            cmd if command.is_none() && !cmd.starts_with('-') => command = Some(cmd.to_string()),
            other => return Err(SpsError::Config(format!("unknown argument `{other}`"))),
        }
    }
    Ok(Cli {
        command: command.ok_or_else(|| SpsError::Config(usage()))?,
        config_path,
        out_dir,
        seed,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(contents.as_bytes())?;
    Ok(())
}

fn load_config(cli: &Cli) -> Result<Config> {
    match &cli.config_path {
        Some(p) => Config::load(p),
        None => Ok(Config::default()),
    }
}

fn cmd_solve(cli: &Cli) -> Result<()> {
    let cfg = load_config(cli)?;
    let solver = cfg.solver_config()?;
    let gs = minimize(&solver, None)?;

    let mut csv = Vec::new();
    gs.write_csv(&mut csv)?;
    write_file(
        &cli.out_dir.join("ground_state.csv"),
        std::str::from_utf8(&csv).expect("ascii csv"),
    )?;
    write_file(&cli.out_dir.join("ground_state.json"), &(gs.to_json() + "\n"))?;

    // unit-multiplier companion state used by the verification paths; only
    // available when the multiplier is positive (bound, non-truncated state)
    match gs.normalized() {
        Ok(normalized) => {
            let v = hartree_potential(&normalized).potential;
            let mut norm_csv = String::from("r,Q,V\n");
            for ((&r, &q), &p) in normalized
                .grid()
                .nodes()
                .iter()
                .zip(normalized.values())
                .zip(v.values())
            {
                norm_csv.push_str(&format!(
                    "{},{},{}\n",
                    sps_core::io::fmt_f64(r),
                    sps_core::io::fmt_f64(q),
                    sps_core::io::fmt_f64(p)
                ));
            }
            write_file(&cli.out_dir.join("ground_state_normalized.csv"), &norm_csv)?;
        }
        Err(e) => println!(
            "solve: skipping unit-multiplier companion state ({e}); \
             the configured mass is likely below the resolvable window of this domain"
        ),
    }
    println!(
        "solve: I_M = {:.8}, multiplier = {:.8}, residual = {:.3e}, {} iterations",
        gs.i_m, gs.multiplier, gs.residual, gs.iterations
    );
    Ok(())
}

fn cmd_shoot(cli: &Cli) -> Result<()> {
    let cfg = load_config(cli)?;
    let solver = cfg.solver_config()?;
    let gs = minimize(&solver, None)?;
    let normalized = gs.normalized()?;
    let v = hartree_potential(&normalized).potential;
    let params = solver.params;
    let bracket = find_bracket(&v, &params, normalized.value_at_origin())?;
    let (q0, result) = bisect_q0(&v, &params, bracket)?;

    let mut csv = Vec::new();
    result.write_csv(&mut csv)?;
    write_file(
        &cli.out_dir.join("shooting_result.csv"),
        std::str::from_utf8(&csv).expect("ascii csv"),
    )?;
    write_file(
        &cli.out_dir.join("shooting_result.json"),
        &(result.to_json() + "\n"),
    )?;
    println!(
        "shoot: q0* = {:.10}, classification = {}, event radius = {:.4}",
        q0, result.classification, result.event_radius
    );
    Ok(())
}

fn cmd_scaling(cli: &Cli) -> Result<()> {
    let cfg = load_config(cli)?;
    let solver = cfg.solver_config()?;
    // sweep halving and doubling of the configured mass
    let masses = [0.5 * cfg.mass, cfg.mass, 2.0 * cfg.mass];
    let report = scaling_law_check(&masses, &solver)?;
    write_file(
        &cli.out_dir.join("scaling_report.json"),
        &(report.to_json() + "\n"),
    )?;
    for row in &report.rows {
        println!(
            "scaling: M = {:<4} I_M = {:+.8e}  I_M/M^6 = {:+.8e}",
            row.mass, row.i_m, row.ratio
        );
    }
    println!(
        "scaling: max relative spread {:.3e} -> {}",
        report.max_rel_deviation,
        if report.pass { "pass" } else { "FAIL" }
    );
    if !report.pass {
        return Err(SpsError::AcceptanceFailed { failed: 1 });
    }
    Ok(())
}

fn cmd_asymptotics(cli: &Cli) -> Result<()> {
    let cfg = load_config(cli)?;
    let solver = cfg.solver_config()?;
    let gs = minimize(&solver, None)?;
    let normalized = gs.normalized()?;
    let fit = decay_fit(&normalized, cfg.epsilon, cfg.window())?;
    let v = hartree_potential(&normalized).potential;
    let expansion = potential_expansion_check(&v, alpha_mass(&normalized));
    let envelope = envelope_check(&normalized);
    let json = format!(
        "{{\"decay_fit\": {}, \"potential_expansion\": {}, \"envelope_nonincreasing\": {}}}\n",
        fit.to_json(),
        expansion.to_json(),
        envelope
    );
    write_file(&cli.out_dir.join("asymptotics.json"), &json)?;
    println!(
        "asymptotics: alpha = {:.6}, drift = {:.3e}, limit = {:.6}, envelope pass = {}",
        fit.alpha, fit.drift, fit.limit_estimate, envelope
    );
    Ok(())
}

fn cmd_verify_all(cli: &Cli) -> Result<()> {
    let ctx = sps_core::acceptance::AcceptanceContext::build()?;
    let outcomes = ctx.run_all(cli.seed)?;
    let mut all_pass = true;
    for o in &outcomes {
        println!("{}", o.line());
        all_pass &= o.passed;
    }
    let body: Vec<String> = outcomes.iter().map(|o| o.to_json()).collect();
    write_file(
        &cli.out_dir.join("acceptance_report.json"),
        &format!("{{\"criteria\": [{}], \"all_pass\": {all_pass}}}\n", body.join(", ")),
    )?;
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if all_pass {
        println!("verify-all: {}/{} criteria passed", outcomes.len(), outcomes.len());
        Ok(())
    } else {
        println!(
            "verify-all: {}/{} criteria passed",
            outcomes.len() - failed,
            outcomes.len()
        );
        Err(SpsError::AcceptanceFailed { failed })
    }
}

fn dispatch(cli: &Cli) -> Result<()> {
    std::fs::create_dir_all(&cli.out_dir)?;
    match cli.command.as_str() {
        "solve" => cmd_solve(cli),
        "shoot" => cmd_shoot(cli),
        "scaling" => cmd_scaling(cli),
        "asymptotics" => cmd_asymptotics(cli),
        "verify-all" => cmd_verify_all(cli),
        other => Err(SpsError::Config(format!(
            "unknown command `{other}`; {}",
            usage()
        ))),
    }
}

fn exit_code_for(err: &SpsError) -> u8 {
    match err {
        SpsError::Config(_) | SpsError::InvalidParameter(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = match parse_args(&args) {
        Ok(cli) => cli,
        Err(e) => {
            eprintln!(
                "{{\"kind\": \"{}\", \"message\": \"{}\"}}",
                e.kind(),
                json_escape(&e.to_string())
            );
            return ExitCode::from(2);
        }
    };
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!(
                "{{\"kind\": \"{}\", \"message\": \"{}\"}}",
                e.kind(),
                json_escape(&e.to_string())
            );
            ExitCode::from(exit_code_for(&e))
        }
    }
}
