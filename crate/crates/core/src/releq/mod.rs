//! Relative-equilibrium analysis.
//!
//! A relative equilibrium is a solution whose configuration evolves by a
//! one-parameter isometry subgroup, so all mutual distances stay constant.
//! This module covers three connected studies:
//!
//! * [`ngon`]: regular n-gon configurations carried by a boost. The
//!   z-component of the first body's equation of motion reduces to a single
//!   sum that must vanish for a relative equilibrium; grid scans certify
//!   numerically that the sum stays strictly negative, so no such solutions
//!   exist for equal masses.
//! * [`elliptic`]: the same configurations carried by a rotation instead.
//!   Here the balance does close, which gives a positive control showing the
//!   residual machinery accepts relative equilibria that exist.
//! * [`collinear`]: five bodies on a common geodesic carried by a homothety
//!   of the half plane. A linear condition on the masses makes the two
//!   independent balance equations agree, producing a family of genuine
//!   collinear relative equilibria.

pub mod collinear;
pub mod elliptic;
pub mod ngon;
pub mod residual;

pub use collinear::{
    alpha1, boundary_f2, boundary_p, boundary_q, collinear_initial, f2_region, f_coeffs,
    f_coeffs_balance, f_coeffs_combined_form, omega1_sq, omega1_sq_balance, omega2_sq,
    omega2_sq_balance, pbar, pbar_prime, pbar_root, solve_masses, verify_collinear_re,
    BoundaryF2, CollinearParams, CollinearSolution, RegionCell, RegionMap,
};
pub use elliptic::{elliptic_ngon_omega, elliptic_orbit_frame};
pub use ngon::{
    ngon_initial, ngon_nonexistence_scan, ngon_orbit, ngon_residual_report, zsum_residual,
    NGonParams, ScanCell, ScanOutcome,
};
pub use residual::{full_re_residual_l2, OrbitFrame, ResidualReport};

use crate::hypergeom::{minkowski_dot, HyperboloidPoint};

/// The z-balance sum of body 1 against the rest, with its bracket terms:
/// `S = sum_j m_j [z_j + (q_1 ⊙ q_j) z_1] / [-1 + (q_1 ⊙ q_j)^2]^{3/2}`.
pub(crate) fn zsum_from_frame(positions: &[HyperboloidPoint], masses: &[f64]) -> (f64, Vec<f64>) {
    let q1 = positions[0].coords();
    let z1 = q1.z;
    let mut s = 0.0;
    let mut terms = Vec::with_capacity(positions.len().saturating_sub(1));
    for (q, &m) in positions.iter().zip(masses).skip(1) {
        let a = minkowski_dot(&q1, &q.coords());
        let term = q.z() + a * z1;
        terms.push(term);
        s += m * term / (a * a - 1.0).powf(1.5);
    }
    (s, terms)
}
