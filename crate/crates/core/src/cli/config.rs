//! Simulation configuration schema.
//!
//! ```json
//! {
//!   "model": "L2",
//!   "bodies": [
//!     { "mass": 1.0, "position": [0.0, 0.0, 1.0], "velocity": [0.0, 0.3, 0.0] }
//!   ],
//!   "integrator": { "dt": 1e-3, "t_end": 1.0 }
//! }
//! ```
//!
//! Positions and velocities are 3-vectors in the hyperboloid model ("L2")
//! and 2-vectors in the half-plane model ("H2").

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{Body, StateL2};
use crate::error::DynamicsError;
use crate::hypergeom::{
    pushforward_to_hyperboloid, HalfPlanePoint, HyperboloidPoint, MinkowskiVec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Model {
    L2,
    H2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodyConfig {
    pub mass: f64,
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_end: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: Model,
    pub bodies: Vec<BodyConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integrator: Option<IntegratorConfig>,
}

/// Configuration problems are reported as strings; the CLI maps them to the
/// usage exit code.
#[derive(Debug)]
pub enum ConfigError {
    Invalid(String),
    /// The state is schema-valid but physically inadmissible (collision).
    Collision(DynamicsError),
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Invalid(format!("bad config: {e}")))
    }

    /// Builds the canonical hyperboloid-model state, converting half-plane
    /// configurations as needed.
    pub fn to_state(&self) -> Result<StateL2, ConfigError> {
        if self.bodies.is_empty() {
            return Err(ConfigError::Invalid("config lists no bodies".into()));
        }
        let mut bodies = Vec::new();
        let mut positions = Vec::new();
        let mut velocities = Vec::new();
        for (idx, b) in self.bodies.iter().enumerate() {
            let body = Body::new(b.mass)
                .map_err(|e| ConfigError::Invalid(format!("body {idx}: {e}")))?;
            bodies.push(body);
            match self.model {
                Model::L2 => {
                    let (p, v) = parse_l2_body(idx, b)?;
                    positions.push(p);
                    velocities.push(v);
                }
                Model::H2 => {
                    let (p, v) = parse_h2_body(idx, b)?;
                    positions.push(p);
                    velocities.push(v);
                }
            }
        }
        match StateL2::new(bodies, positions, velocities) {
            Ok(s) => Ok(s),
            Err(e @ DynamicsError::Collision { .. }) => Err(ConfigError::Collision(e)),
            Err(e) => Err(ConfigError::Invalid(e.to_string())),
        }
    }
}

fn parse_l2_body(
    idx: usize,
    b: &BodyConfig,
) -> Result<(HyperboloidPoint, MinkowskiVec), ConfigError> {
    let [px, py, pz] = three(&b.position)
        .ok_or_else(|| ConfigError::Invalid(format!("body {idx}: L2 position needs 3 entries")))?;
    let [vx, vy, vz] = three(&b.velocity)
        .ok_or_else(|| ConfigError::Invalid(format!("body {idx}: L2 velocity needs 3 entries")))?;
    let p = HyperboloidPoint::new(MinkowskiVec::new(px, py, pz))
        .map_err(|e| ConfigError::Invalid(format!("body {idx}: {e}")))?;
    Ok((p, MinkowskiVec::new(vx, vy, vz)))
}

fn parse_h2_body(
    idx: usize,
    b: &BodyConfig,
) -> Result<(HyperboloidPoint, MinkowskiVec), ConfigError> {
    let [re, im] = two(&b.position)
        .ok_or_else(|| ConfigError::Invalid(format!("body {idx}: H2 position needs 2 entries")))?;
    let [vre, vim] = two(&b.velocity)
        .ok_or_else(|| ConfigError::Invalid(format!("body {idx}: H2 velocity needs 2 entries")))?;
    let w = HalfPlanePoint::new(re, im)
        .map_err(|e| ConfigError::Invalid(format!("body {idx}: {e}")))?;
    let tv = pushforward_to_hyperboloid(&w, Complex64::new(vre, vim))
        .map_err(|e| ConfigError::Invalid(format!("body {idx}: {e}")))?;
    Ok((tv.base, tv.v))
}

fn three(v: &[f64]) -> Option<[f64; 3]> {
    <[f64; 3]>::try_from(v).ok()
}

fn two(v: &[f64]) -> Option<[f64; 2]> {
    <[f64; 2]>::try_from(v).ok()
}
