//! Command machinery behind the `hnb` binary.

pub mod commands;
pub mod config;
pub mod grids;
pub mod output;

pub use commands::{
    cmd_collinear_solve, cmd_ngon_residual, cmd_ngon_scan, cmd_pbar_root, cmd_region_map,
    cmd_simulate, cmd_verify_re, EXIT_MATH_FAILURE, EXIT_OK, EXIT_USAGE,
};
pub use config::{BodyConfig, IntegratorConfig, Model, RunConfig};
pub use grids::{lin_spaced, log_spaced, parse_grid};
pub use output::{to_json_string, ScanReport};
