//! Command bodies for the `hnb` binary.
//!
//! Exit-code contract: 0 success, 1 usage or configuration error, 2
//! mathematical failure (no solution, collision, certificate violation).
//! All output is deterministic; identical invocations produce byte-identical
//! files.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cli::config::{ConfigError, Model, RunConfig};
use crate::cli::output::{fmt_f64, to_json_string, ScanReport};
use crate::dynamics::{integrate, total_energy_l2};
use crate::error::ReleqError;
use crate::hypergeom::{
    hyperboloid_to_halfplane, minkowski_dot, pushforward_to_halfplane, TangentVec,
};
use crate::releq::{
    alpha1, collinear_initial, f2_region, ngon_nonexistence_scan, pbar, pbar_root, solve_masses,
    verify_collinear_re, zsum_residual, CollinearSolution, NGonParams,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH_FAILURE: i32 = 2;

fn emit(out: Option<&Path>, content: &str) -> std::io::Result<bool> {
    match out {
        Some(path) => {
            fs::write(path, content)?;
            Ok(true)
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            Ok(false)
        }
    }
}

fn fail_io(err: std::io::Error) -> i32 {
    eprintln!("error: {err}");
    EXIT_USAGE
}

/// `ngon-scan`: evaluates the polygon balance sum over the grid and reports
/// the certificate.
#[allow(clippy::too_many_arguments)]
pub fn cmd_ngon_scan(
    n_min: usize,
    n_max: usize,
    r_grid: &[f64],
    omega_grid: &[f64],
    t_grid: &[f64],
    out: Option<&Path>,
) -> i32 {
    if n_min < 2 || n_min > n_max {
        eprintln!("error: need 2 <= n-min <= n-max, got {n_min}..{n_max}");
        return EXIT_USAGE;
    }
    if omega_grid.iter().any(|&w| w == 0.0 || !w.is_finite()) {
        eprintln!("error: omega grid entries must be finite and nonzero");
        return EXIT_USAGE;
    }
    let outcome = match ngon_nonexistence_scan(n_min..=n_max, r_grid, omega_grid, t_grid, None) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let report = ScanReport::from_outcome(
        n_min,
        n_max,
        r_grid.to_vec(),
        omega_grid.to_vec(),
        t_grid.to_vec(),
        &outcome,
    );
    let json = to_json_string(&report);
    let to_file = match emit(out, &json) {
        Ok(f) => f,
        Err(e) => return fail_io(e),
    };
    let verdict = if report.certified {
        format!("CERTIFIED max S = {} < 0", fmt_f64(report.max_s))
    } else {
        format!("NOT CERTIFIED max S = {}", fmt_f64(report.max_s))
    };
    if to_file {
        println!("{verdict}");
    } else {
        eprintln!("{verdict}");
    }
    if report.certified {
        EXIT_OK
    } else {
        EXIT_MATH_FAILURE
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct NgonResidualReportJson {
    n: usize,
    r: f64,
    omega: f64,
    t: f64,
    s: f64,
    terms: Vec<f64>,
    /// `term_j - (z_j - z_1)`, each strictly negative on the certificate.
    margins: Vec<f64>,
}

/// `ngon-residual`: single-point evaluation of the balance sum.
pub fn cmd_ngon_residual(n: usize, r: f64, omega: f64, t: f64, out: Option<&Path>) -> i32 {
    let params = match NGonParams::new(n, r, omega) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let masses = vec![1.0; n];
    let (s, terms) = match zsum_residual(&params, t, &masses) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let frame = crate::releq::ngon_orbit(&params, t);
    let z1 = frame.positions[0].z();
    let margins: Vec<f64> = terms
        .iter()
        .enumerate()
        .map(|(k, term)| term - (frame.positions[k + 1].z() - z1))
        .collect();
    let report = NgonResidualReportJson { n, r, omega, t, s, terms, margins };
    if let Err(e) = emit(out, &to_json_string(&report)) {
        return fail_io(e);
    }
    if s < 0.0 {
        EXIT_OK
    } else {
        EXIT_MATH_FAILURE
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CollinearSolveReport {
    pub alpha: f64,
    pub beta: f64,
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
    pub mu: f64,
    pub omega_sq: f64,
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub residual_max: f64,
    pub distance_drift: f64,
    /// Ready-to-run simulation input reproducing this equilibrium.
    pub config: RunConfig,
}

fn collinear_run_config(sol: &CollinearSolution) -> RunConfig {
    let omega = sol.omega_sq.sqrt();
    let masses = [sol.mu, sol.mu, sol.big_m, sol.m, sol.m];
    let bodies = collinear_initial(sol.alpha, sol.beta)
        .expect("solution angles are admissible")
        .iter()
        .zip(masses)
        .map(|(w, mass)| crate::cli::config::BodyConfig {
            mass,
            position: vec![w.re(), w.im()],
            velocity: vec![omega * w.re(), omega * w.im()],
        })
        .collect();
    RunConfig {
        model: Model::H2,
        bodies,
        integrator: Some(crate::cli::config::IntegratorConfig { dt: 1e-4, t_end: 1.0 }),
    }
}

fn angles_admissible(alpha: f64, beta: f64) -> bool {
    alpha.is_finite()
        && beta.is_finite()
        && alpha > 0.0
        && beta > 0.0
        && alpha + beta < std::f64::consts::FRAC_PI_2
}

/// `collinear-solve`: mass solve plus verification at t in {0, 0.5, 1}.
pub fn cmd_collinear_solve(alpha: f64, beta: f64, out: Option<&Path>) -> i32 {
    if !angles_admissible(alpha, beta) {
        eprintln!(
            "error: need 0 < alpha and 0 < beta with alpha + beta < pi/2, got {alpha}, {beta}"
        );
        return EXIT_USAGE;
    }
    let sol = match solve_masses(alpha, beta) {
        Ok(s) => s,
        Err(ReleqError::NoSolution { reason, f2 }) => {
            eprintln!("no solution: {reason} (f2 = {})", fmt_f64(f2));
            return EXIT_MATH_FAILURE;
        }
        Err(ReleqError::NonpositiveOmegaSq { omega_sq, .. }) => {
            eprintln!("no solution: omega_sq<=0 (omega_sq = {})", fmt_f64(omega_sq));
            return EXIT_MATH_FAILURE;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let report = match verify_collinear_re(&sol, &[0.0, 0.5, 1.0]) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("verification failed: {e}");
            return EXIT_MATH_FAILURE;
        }
    };
    let json = to_json_string(&CollinearSolveReport {
        alpha: sol.alpha,
        beta: sol.beta,
        m: sol.m,
        big_m: sol.big_m,
        mu: sol.mu,
        omega_sq: sol.omega_sq,
        f1: sol.f1,
        f2: sol.f2,
        f3: sol.f3,
        residual_max: report.max_residual(),
        distance_drift: report.distance_drift.unwrap_or(f64::NAN),
        config: collinear_run_config(&sol),
    });
    if let Err(e) = emit(out, &json) {
        return fail_io(e);
    }
    EXIT_OK
}

/// `region-map`: CSV over the admissible angle triangle.
pub fn cmd_region_map(alpha_steps: usize, beta_steps: usize, out: Option<&Path>) -> i32 {
    let map = match f2_region(alpha_steps, beta_steps) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut csv = String::from("alpha,beta,f1,f2,f3,omega_sq_at_solution\n");
    for cell in &map.cells {
        csv.push_str(&fmt_f64(cell.alpha));
        csv.push(',');
        csv.push_str(&fmt_f64(cell.beta));
        csv.push(',');
        csv.push_str(&fmt_f64(cell.f1));
        csv.push(',');
        csv.push_str(&fmt_f64(cell.f2));
        csv.push(',');
        csv.push_str(&fmt_f64(cell.f3));
        csv.push(',');
        if let Some(w) = cell.omega_sq {
            csv.push_str(&fmt_f64(w));
        }
        csv.push('\n');
    }
    if let Err(e) = emit(out, &csv) {
        return fail_io(e);
    }
    if !map.has_negative_f2() {
        eprintln!("error: the f2 < 0 region is empty on this grid");
        return EXIT_MATH_FAILURE;
    }
    EXIT_OK
}

/// `simulate`: integrates a configuration and emits a trajectory CSV.
/// Flags override the config's integrator block; one of the two must supply
/// both `dt` and `t_end`.
pub fn cmd_simulate(
    config_path: &Path,
    t_end: Option<f64>,
    dt: Option<f64>,
    out: Option<&Path>,
) -> i32 {
    let text = match fs::read_to_string(config_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", config_path.display());
            return EXIT_USAGE;
        }
    };
    let config = match RunConfig::from_json(&text) {
        Ok(c) => c,
        Err(ConfigError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
        Err(ConfigError::Collision(e)) => {
            eprintln!("collision in the initial configuration: {e}");
            return EXIT_MATH_FAILURE;
        }
    };
    let state = match config.to_state() {
        Ok(s) => s,
        Err(ConfigError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
        Err(ConfigError::Collision(e)) => {
            eprintln!("collision in the initial configuration: {e}");
            return EXIT_MATH_FAILURE;
        }
    };
    let t_end = t_end.or(config.integrator.map(|ic| ic.t_end));
    let dt = dt.or(config.integrator.map(|ic| ic.dt));
    let (t_end, dt) = match (t_end, dt) {
        (Some(t), Some(d)) if t > 0.0 && d > 0.0 && t.is_finite() && d.is_finite() => (t, d),
        _ => {
            eprintln!("error: --t-end and --dt must be positive (flags or config)");
            return EXIT_USAGE;
        }
    };

    let outcome = match integrate(&state, t_end, dt) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };

    let csv = match render_trajectory_csv(&config, &outcome) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_MATH_FAILURE;
        }
    };
    if let Err(e) = emit(out, &csv) {
        return fail_io(e);
    }
    if outcome.collision.is_some() {
        eprintln!("collision abort; partial trajectory retained");
        EXIT_MATH_FAILURE
    } else {
        EXIT_OK
    }
}

fn render_trajectory_csv(
    config: &RunConfig,
    outcome: &crate::dynamics::IntegrationOutcome,
) -> Result<String, ReleqError> {
    let mut csv = String::new();
    match config.model {
        Model::L2 => csv.push_str("t,body,x,y,z,vx,vy,vz,energy,constraint_drift\n"),
        Model::H2 => csv.push_str("t,body,re,im,vre,vim,energy,constraint_drift\n"),
    }
    for (t, state) in outcome.trajectory.times.iter().zip(&outcome.trajectory.states) {
        let energy = total_energy_l2(state).map_err(ReleqError::from)?;
        for i in 0..state.len() {
            let q = state.positions[i];
            let v = state.velocities[i];
            let constraint = (minkowski_dot(&q.coords(), &q.coords()) + 1.0).abs();
            csv.push_str(&fmt_f64(*t));
            csv.push(',');
            csv.push_str(&i.to_string());
            csv.push(',');
            match config.model {
                Model::L2 => {
                    for value in [q.x(), q.y(), q.z(), v.x, v.y, v.z] {
                        csv.push_str(&fmt_f64(value));
                        csv.push(',');
                    }
                }
                Model::H2 => {
                    let w = hyperboloid_to_halfplane(&q);
                    let wdot = pushforward_to_halfplane(&TangentVec::new_unchecked(q, v))
                        .map_err(ReleqError::from)?;
                    for value in [w.re(), w.im(), wdot.re, wdot.im] {
                        csv.push_str(&fmt_f64(value));
                        csv.push(',');
                    }
                }
            }
            csv.push_str(&fmt_f64(energy));
            csv.push(',');
            csv.push_str(&fmt_f64(constraint));
            csv.push('\n');
        }
    }
    let d = &outcome.trajectory.diagnostics;
    csv.push_str(&format!(
        "# energy_drift={} lxy_drift={} lxz_drift={} lyz_drift={} max_constraint={} max_repair={}",
        fmt_f64(d.energy_drift),
        fmt_f64(d.first_integral_drift[0]),
        fmt_f64(d.first_integral_drift[1]),
        fmt_f64(d.first_integral_drift[2]),
        fmt_f64(d.max_constraint),
        fmt_f64(d.max_repair_displacement),
    ));
    if let Some((i, j, t)) = outcome.collision {
        csv.push_str(&format!(" collision={i},{j},{}", fmt_f64(t)));
    }
    csv.push('\n');
    Ok(csv)
}

#[derive(Debug, Serialize, Deserialize)]
struct PbarRootReport {
    x0: f64,
    alpha1: f64,
    pbar_at_root: f64,
}

/// `pbar-root`: bisection root of the boundary cubic and the threshold angle.
pub fn cmd_pbar_root(out: Option<&Path>) -> i32 {
    let x0 = pbar_root();
    let report = PbarRootReport { x0, alpha1: alpha1(), pbar_at_root: pbar(x0) };
    if let Err(e) = emit(out, &to_json_string(&report)) {
        return fail_io(e);
    }
    EXIT_OK
}

#[derive(Debug, Serialize, Deserialize)]
struct VerifyReReport {
    alpha: f64,
    beta: f64,
    m: f64,
    #[serde(rename = "M")]
    big_m: f64,
    mu: f64,
    omega_sq: f64,
    per_body_residual: Vec<f64>,
    residual_max: f64,
    distance_drift: f64,
}

/// `verify-re`: verifies a solved collinear equilibrium, either from a
/// solution file or by solving at the given angles.
pub fn cmd_verify_re(
    solution_path: Option<&Path>,
    alpha: Option<f64>,
    beta: Option<f64>,
    out: Option<&Path>,
) -> i32 {
    let sol: CollinearSolution = match (solution_path, alpha, beta) {
        (Some(path), None, None) => {
            let text = match fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            };
            match serde_json::from_str(&text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: bad solution file: {e}");
                    return EXIT_USAGE;
                }
            }
        }
        (None, Some(a), Some(b)) => {
            if !angles_admissible(a, b) {
                eprintln!("error: inadmissible angles {a}, {b}");
                return EXIT_USAGE;
            }
            match solve_masses(a, b) {
                Ok(s) => s,
                Err(ReleqError::NoSolution { reason, f2 }) => {
                    eprintln!("no solution: {reason} (f2 = {})", fmt_f64(f2));
                    return EXIT_MATH_FAILURE;
                }
                Err(ReleqError::NonpositiveOmegaSq { omega_sq, .. }) => {
                    eprintln!("no solution: omega_sq<=0 (omega_sq = {})", fmt_f64(omega_sq));
                    return EXIT_MATH_FAILURE;
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_USAGE;
                }
            }
        }
        _ => {
            eprintln!("error: pass either --solution FILE or both --alpha and --beta");
            return EXIT_USAGE;
        }
    };
    let report = match verify_collinear_re(&sol, &[0.0, 0.5, 1.0]) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("verification failed: {e}");
            return EXIT_MATH_FAILURE;
        }
    };
    let residual_max = report.max_residual();
    let json = to_json_string(&VerifyReReport {
        alpha: sol.alpha,
        beta: sol.beta,
        m: sol.m,
        big_m: sol.big_m,
        mu: sol.mu,
        omega_sq: sol.omega_sq,
        per_body_residual: report.per_body_residual.clone(),
        residual_max,
        distance_drift: report.distance_drift.unwrap_or(f64::NAN),
    });
    if let Err(e) = emit(out, &json) {
        return fail_io(e);
    }
    if residual_max <= 1e-8 {
        EXIT_OK
    } else {
        eprintln!("residual_max = {} exceeds 1e-8", fmt_f64(residual_max));
        EXIT_MATH_FAILURE
    }
}
