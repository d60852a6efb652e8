//! Rotating regular n-gon: the positive control.
//!
//! For equal masses on a regular n-gon carried by the rotation `A(omega t)`
//! about the apex axis, the equations of motion close at a single rate. The
//! z-component of the balance at t = 0 gives
//!
//! ```text
//! omega^2 = -F_z / (r^2 z),
//! ```
//!
//! where `F` is the gravitational tangent vector on body 1. The full
//! residual of the rotating orbit vanishes at this rate, which demonstrates
//! that the residual machinery accepts relative equilibria that exist while
//! the boost scan rejects the polygon family.

use crate::dynamics::{grav_l2, Body};
use crate::error::ReleqError;
use crate::hypergeom::{elliptic_matrix, MinkowskiVec};

use super::ngon::ngon_initial;
use super::residual::OrbitFrame;

/// Squared rotation rate making the regular n-gon with equal masses a
/// relative equilibrium of the rotation subgroup.
pub fn elliptic_ngon_omega(n: usize, mass: f64, r: f64) -> Result<f64, ReleqError> {
    if n < 3 {
        return Err(ReleqError::InvalidParams { what: format!("n = {n} < 3") });
    }
    if !(mass.is_finite() && mass > 0.0) {
        return Err(ReleqError::InvalidParams { what: format!("mass = {mass}") });
    }
    let positions = ngon_initial(n, r)?;
    let raw: Vec<MinkowskiVec> = positions.iter().map(|p| p.coords()).collect();
    let bodies: Vec<Body> = (0..n).map(|_| Body::new(mass).expect("validated")).collect();
    let grav = grav_l2(&bodies, &raw).map_err(ReleqError::from)?;
    let z = (1.0 + r * r).sqrt();
    let omega_sq = -grav[0].z / (r * r * z);
    if omega_sq <= 0.0 {
        return Err(ReleqError::NonpositiveRate { omega_sq });
    }
    Ok(omega_sq)
}

/// The rotating n-gon orbit at time `t` with exact derivatives:
/// positions `A(omega t) q_i(0)`, velocities `omega (-y, x, 0)`,
/// accelerations `-omega^2 (x, y, 0)`.
pub fn elliptic_orbit_frame(n: usize, r: f64, omega: f64, t: f64) -> OrbitFrame {
    let initial = ngon_initial(n, r).expect("validated params");
    let g = elliptic_matrix(omega * t);
    let positions: Vec<_> = initial.iter().map(|q| g.apply(q)).collect();
    let velocities = positions
        .iter()
        .map(|q| MinkowskiVec::new(-q.y(), q.x(), 0.0).scale(omega))
        .collect();
    let accelerations = positions
        .iter()
        .map(|q| MinkowskiVec::new(q.x(), q.y(), 0.0).scale(-omega * omega))
        .collect();
    OrbitFrame { positions, velocities, accelerations }
}
