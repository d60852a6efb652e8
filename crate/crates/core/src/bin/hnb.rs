//! Command line front end for the hyperbolic n-body toolkit.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use hyperbolic_nbody::cli::{
    cmd_collinear_solve, cmd_ngon_residual, cmd_ngon_scan, cmd_pbar_root, cmd_region_map,
    cmd_simulate, cmd_verify_re, parse_grid, EXIT_USAGE,
};

#[derive(Parser)]
#[command(
    name = "hnb",
    about = "Curved n-body dynamics on the hyperbolic plane: polygon certificates, \
             collinear relative equilibria, region maps, and trajectory simulation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan the polygon balance sum over a parameter grid and certify its sign
    NgonScan {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// r values: comma list or min:max:count[:lin|log]
        #[arg(long, default_value = "0.1:5:20:log")]
        r_grid: String,
        /// boost rates: comma list or range spec (nonzero)
        #[arg(long, default_value = "0.1,1,2")]
        omega_grid: String,
        /// boost phases omega*t (nonnegative): comma list or range spec
        #[arg(long, default_value = "0:5:20")]
        t_grid: String,
        /// write the JSON report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the balance sum at a single parameter point
    NgonResidual {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        omega: f64,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve for collinear relative-equilibrium masses at given angles
    CollinearSolve {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the sign-region CSV over the admissible angle triangle
    RegionMap {
        #[arg(long, default_value_t = 200)]
        alpha_steps: usize,
        #[arg(long, default_value_t = 200)]
        beta_steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate a configuration file and emit a trajectory CSV
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a collinear relative equilibrium (from a file or fresh solve)
    VerifyRe {
        /// JSON solution file produced by collinear-solve
        #[arg(long, conflicts_with_all = ["alpha", "beta"])]
        solution: Option<PathBuf>,
        #[arg(long, requires = "beta")]
        alpha: Option<f64>,
        #[arg(long, requires = "alpha")]
        beta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Root of the boundary cubic and the threshold angle
    PbarRoot {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };

    let code = match cli.command {
        Command::NgonScan { n_min, n_max, r_grid, omega_grid, t_grid, out } => {
            let parsed = (parse_grid(&r_grid), parse_grid(&omega_grid), parse_grid(&t_grid));
            match parsed {
                (Ok(r), Ok(w), Ok(t)) => {
                    cmd_ngon_scan(n_min, n_max, &r, &w, &t, out.as_deref())
                }
                (r, w, t) => {
                    for (name, res) in [("--r-grid", r.err()), ("--omega-grid", w.err()),
                        ("--t-grid", t.err())]
                    {
                        if let Some(msg) = res {
                            eprintln!("error: {name}: {msg}");
                        }
                    }
                    eprintln!("usage: hnb ngon-scan [--n-min N] [--n-max N] [--r-grid SPEC] \
                               [--omega-grid SPEC] [--t-grid SPEC] [--out FILE]");
                    EXIT_USAGE
                }
            }
        }
        Command::NgonResidual { n, r, omega, t, out } => {
            cmd_ngon_residual(n, r, omega, t, out.as_deref())
        }
        Command::CollinearSolve { alpha, beta, out } => {
            cmd_collinear_solve(alpha, beta, out.as_deref())
        }
        Command::RegionMap { alpha_steps, beta_steps, out } => {
            cmd_region_map(alpha_steps, beta_steps, out.as_deref())
        }
        Command::Simulate { config, t_end, dt, out } => {
            cmd_simulate(&config, t_end, dt, out.as_deref())
        }
        Command::VerifyRe { solution, alpha, beta, out } => {
            cmd_verify_re(solution.as_deref(), alpha, beta, out.as_deref())
        }
        Command::PbarRoot { out } => cmd_pbar_root(out.as_deref()),
    };
    ExitCode::from(code as u8)
}
