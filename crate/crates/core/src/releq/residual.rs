//! Equation-of-motion residuals for candidate closed-form orbits.

use crate::dynamics::{accel_l2, Body, StateL2};
use crate::error::DynamicsError;
use crate::hypergeom::{HyperboloidPoint, MinkowskiVec};

/// Positions, velocities, and accelerations of a closed-form orbit at one
/// instant.
#[derive(Debug, Clone)]
pub struct OrbitFrame {
    pub positions: Vec<HyperboloidPoint>,
    pub velocities: Vec<MinkowskiVec>,
    pub accelerations: Vec<MinkowskiVec>,
}

/// Per-body defect data for a candidate relative equilibrium.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    /// Max-norm of the equation-of-motion defect per body over the sampled
    /// times.
    pub per_body_residual: Vec<f64>,
    /// Value of the z-balance sum for polygon-under-boost candidates.
    pub zsum: Option<f64>,
    /// The bracket terms of that sum (polygon case only; empty otherwise).
    pub term_signs: Vec<f64>,
    /// Largest deviation of any pairwise distance from its initial value
    /// along a verification integration, when one was run.
    pub distance_drift: Option<f64>,
}

impl ResidualReport {
    pub fn max_residual(&self) -> f64 {
        self.per_body_residual.iter().copied().fold(0.0, f64::max)
    }
}

/// Max-norm defect `q''_i(t) - rhs_i(t)` per body over the sampled times,
/// where the right-hand side is the hyperboloid-model equation of motion
/// evaluated on the supplied frame.
pub fn full_re_residual_l2(
    orbit: impl Fn(f64) -> OrbitFrame,
    masses: &[f64],
    times: &[f64],
) -> Result<ResidualReport, DynamicsError> {
    let bodies: Vec<Body> = masses
        .iter()
        .map(|&m| Body::new(m))
        .collect::<Result<_, _>>()?;
    let mut per_body = vec![0.0f64; masses.len()];
    for &t in times {
        let frame = orbit(t);
        let state =
            StateL2::new_unchecked(bodies.clone(), frame.positions, frame.velocities.clone());
        let rhs = accel_l2(&state)?;
        for (i, (supplied, computed)) in frame.accelerations.iter().zip(&rhs).enumerate() {
            per_body[i] = per_body[i].max(supplied.sub(computed).max_abs());
        }
    }
    Ok(ResidualReport {
        per_body_residual: per_body,
        zsum: None,
        term_signs: Vec::new(),
        distance_drift: None,
    })
}
