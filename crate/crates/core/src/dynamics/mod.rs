//! Forces, energies, and time integration for the curved n-body problem.
//!
//! The hyperboloid model is the canonical formulation. Writing `q_i` for the
//! positions on the upper sheet and `⊙` for the Minkowski product, the
//! equations of motion are
//!
//! ```text
//! q''_i = sum_{j != i} m_j (q_j + (q_i ⊙ q_j) q_i) / (-1 + (q_i ⊙ q_j)^2)^{3/2}
//!         + (q'_i ⊙ q'_i) q_i
//! ```
//!
//! with the pair potential `U = sum_{i<j} m_i m_j coth(d_ij)` (the curved
//! cotangent at curvature -1), kinetic energy `T = 1/2 sum m_i q'_i ⊙ q'_i`,
//! and conserved energy `E = T - U`.
//!
//! The half-plane right-hand side [`accel_h2`] is defined by conjugation:
//! positions convert to the sheet, the gravitational (covariant) part of the
//! acceleration is evaluated there and pushed back, and the closed-form
//! geodesic term `2 w'^2 / (w - conj w)` is added. A direct closed-form
//! variant [`accel_h2_direct`] is retained for comparison; the two disagree
//! (see the tests), and the conjugated form is the one consistent with the
//! sheet dynamics and with energy conservation.

pub mod integrate;

pub use integrate::{integrate, step_rk4, IntegrationOutcome, Trajectory, TrajectoryDiagnostics};

use num_complex::Complex64;

use crate::error::DynamicsError;
use crate::hypergeom::{
    dist_halfplane, dist_hyperboloid, halfplane_to_hyperboloid, minkowski_dot,
    pushforward_to_halfplane, HalfPlanePoint, HyperboloidPoint, LorentzTransform, MinkowskiVec,
    TangentVec,
};

/// Bodies closer than this hyperbolic distance are treated as colliding.
pub const EPS_COLL: f64 = 1e-8;

/// A point mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Body {
    pub mass: f64,
}

impl Body {
    pub fn new(mass: f64) -> Result<Self, DynamicsError> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(DynamicsError::InvalidMass { mass });
        }
        Ok(Body { mass })
    }
}

/// Positions and velocities of n bodies in the hyperboloid model. Velocities
/// are Minkowski-orthogonal to their positions.
#[derive(Debug, Clone, PartialEq)]
pub struct StateL2 {
    pub bodies: Vec<Body>,
    pub positions: Vec<HyperboloidPoint>,
    pub velocities: Vec<MinkowskiVec>,
}

impl StateL2 {
    /// Validates array lengths, tangency of every velocity, and pairwise
    /// separation above the collision threshold.
    pub fn new(
        bodies: Vec<Body>,
        positions: Vec<HyperboloidPoint>,
        velocities: Vec<MinkowskiVec>,
    ) -> Result<Self, DynamicsError> {
        if bodies.len() != positions.len() || bodies.len() != velocities.len() {
            return Err(DynamicsError::MismatchedLengths {
                what: format!(
                    "bodies: {}, positions: {}, velocities: {}",
                    bodies.len(),
                    positions.len(),
                    velocities.len()
                ),
            });
        }
        for (p, v) in positions.iter().zip(&velocities) {
            TangentVec::new(*p, *v).map_err(DynamicsError::Geometry)?;
        }
        let state = StateL2 { bodies, positions, velocities };
        state.check_separation()?;
        Ok(state)
    }

    pub(crate) fn new_unchecked(
        bodies: Vec<Body>,
        positions: Vec<HyperboloidPoint>,
        velocities: Vec<MinkowskiVec>,
    ) -> Self {
        StateL2 { bodies, positions, velocities }
    }

    pub fn len(&self) -> usize {
        self.bodies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }

    fn check_separation(&self) -> Result<(), DynamicsError> {
        check_separation_l2(&self.positions)
    }
}

/// Positions and velocities of n bodies in the half-plane model.
#[derive(Debug, Clone, PartialEq)]
pub struct StateH2 {
    pub bodies: Vec<Body>,
    pub positions: Vec<HalfPlanePoint>,
    pub velocities: Vec<Complex64>,
}

impl StateH2 {
    pub fn new(
        bodies: Vec<Body>,
        positions: Vec<HalfPlanePoint>,
        velocities: Vec<Complex64>,
    ) -> Result<Self, DynamicsError> {
        if bodies.len() != positions.len() || bodies.len() != velocities.len() {
            return Err(DynamicsError::MismatchedLengths {
                what: format!(
                    "bodies: {}, positions: {}, velocities: {}",
                    bodies.len(),
                    positions.len(),
                    velocities.len()
                ),
            });
        }
        Ok(StateH2 { bodies, positions, velocities })
    }

    pub fn len(&self) -> usize {
        self.bodies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }
}

/// Squared chordal (Minkowski) separation, `(p - q) ⊙ (p - q)`. Equals
/// `4 sinh^2(d/2)` on the sheet, so it resolves tiny separations that the
/// distance formula itself cannot.
fn chordal_sq(p: &MinkowskiVec, q: &MinkowskiVec) -> f64 {
    let d = p.sub(q);
    minkowski_dot(&d, &d)
}

fn collision_chordal_sq() -> f64 {
    let s = (EPS_COLL / 2.0).sinh();
    4.0 * s * s
}

fn check_separation_l2(positions: &[HyperboloidPoint]) -> Result<(), DynamicsError> {
    let floor = collision_chordal_sq();
    for i in 0..positions.len() {
        for j in (i + 1)..positions.len() {
            if chordal_sq(&positions[i].coords(), &positions[j].coords()) < floor {
                return Err(DynamicsError::Collision { i, j });
            }
        }
    }
    Ok(())
}

/// Gravitational part of the acceleration on the sheet: for each body the
/// tangent vector
/// `sum_{j != i} m_j (q_j + (q_i ⊙ q_j) q_i) / (-1 + (q_i ⊙ q_j)^2)^{3/2}`.
///
/// This is the covariant acceleration of the flow; the full coordinate
/// acceleration adds `(q'_i ⊙ q'_i) q_i`.
///
/// The pair terms are evaluated through the chordal difference: with
/// `beta = 1 + q_i ⊙ q_j` recovered from the grams,
///
/// ```text
/// q_j + (q_i ⊙ q_j) q_i = (q_j - q_i) + beta q_i,
/// (q_i ⊙ q_j)^2 - 1     = beta (beta - 2),
/// ```
///
/// which is the same expression in a form that still resolves separations
/// near the collision threshold, where the direct product rounds to -1.
pub(crate) fn grav_l2(
    bodies: &[Body],
    positions: &[MinkowskiVec],
) -> Result<Vec<MinkowskiVec>, DynamicsError> {
    let n = bodies.len();
    let floor = collision_chordal_sq();
    let grams: Vec<f64> = positions.iter().map(|q| minkowski_dot(q, q)).collect();
    let mut out = vec![MinkowskiVec::ZERO; n];
    for i in 0..n {
        let qi = &positions[i];
        let mut acc = MinkowskiVec::ZERO;
        for j in 0..n {
            if i == j {
                continue;
            }
            let qj = &positions[j];
            let chord = qj.sub(qi);
            let c2 = minkowski_dot(&chord, &chord);
            if c2 < floor {
                return Err(DynamicsError::Collision { i: i.min(j), j: i.max(j) });
            }
            let beta = (2.0 + grams[i] + grams[j] - c2) / 2.0;
            let denom = (beta * (beta - 2.0)).powf(1.5);
            let dir = chord.add(&qi.scale(beta));
            acc = acc.add(&dir.scale(bodies[j].mass / denom));
        }
        out[i] = acc;
    }
    Ok(out)
}

/// Full coordinate acceleration of every body in the hyperboloid model.
///
/// Satisfies the algebraic identity `q_i ⊙ a_i = -(q'_i ⊙ q'_i)` for states
/// on the sheet.
pub fn accel_l2(state: &StateL2) -> Result<Vec<MinkowskiVec>, DynamicsError> {
    let raw: Vec<MinkowskiVec> = state.positions.iter().map(|p| p.coords()).collect();
    accel_l2_raw(&state.bodies, &raw, &state.velocities)
}

/// Acceleration on raw coordinates, usable slightly off the sheet (integrator
/// substeps).
pub(crate) fn accel_l2_raw(
    bodies: &[Body],
    positions: &[MinkowskiVec],
    velocities: &[MinkowskiVec],
) -> Result<Vec<MinkowskiVec>, DynamicsError> {
    let grav = grav_l2(bodies, positions)?;
    Ok(grav
        .into_iter()
        .zip(positions.iter().zip(velocities))
        .map(|(g, (q, v))| {
            let vv = minkowski_dot(v, v);
            g.add(&q.scale(vv))
        })
        .collect())
}

/// Half-plane acceleration by conjugation through the hyperboloid model.
///
/// Positions convert to the sheet, the gravitational tangent vector is
/// evaluated there and pushed back to the half plane, and the closed-form
/// geodesic term `2 w'^2 / (w - conj w)` is added. The given velocities enter
/// only through that geodesic term.
pub fn accel_h2(state: &StateH2) -> Result<Vec<Complex64>, DynamicsError> {
    let sheet_positions: Vec<HyperboloidPoint> =
        state.positions.iter().map(halfplane_to_hyperboloid).collect();
    let raw: Vec<MinkowskiVec> = sheet_positions.iter().map(|p| p.coords()).collect();
    let grav = grav_l2(&state.bodies, &raw)?;

    let mut out = Vec::with_capacity(state.len());
    for ((p, g), (w, wdot)) in sheet_positions
        .iter()
        .zip(&grav)
        .zip(state.positions.iter().zip(&state.velocities))
    {
        let tangent = TangentVec::new_unchecked(*p, *g);
        let pushed = pushforward_to_halfplane(&tangent).map_err(DynamicsError::Geometry)?;
        let wc = w.to_complex();
        let geodesic = 2.0 * wdot * wdot / (wc - wc.conj());
        out.push(pushed + geodesic);
    }
    Ok(out)
}

/// Direct closed-form variant of the half-plane right-hand side.
///
/// For each body this evaluates
///
/// ```text
/// w''_k = -(w_k - conj w_k)^2 / 2
///         * sum_{j != k} m_j (conj w_k - w_k)(conj w_j - w_j)^2 (w_k - w_j)(conj w_j - w_k) / T_{j,k}^3
///         + 2 w'_k^2 / (w_k - conj w_k)
/// ```
///
/// with
///
/// ```text
/// T_{k,j} = sqrt( 4 (Re w_k - Re w_j)^2 [ (Re w_k - Re w_j)^2
///                 + 2 (Im w_k^2 + Im w_j^2) ] + 4 (Im w_k^2 - Im w_j^2)^2 ).
/// ```
///
/// This form disagrees with [`accel_h2`]; it is retained so the gap can be
/// measured (see the comparison test). Use [`accel_h2`] for dynamics.
pub fn accel_h2_direct(state: &StateH2) -> Result<Vec<Complex64>, DynamicsError> {
    let n = state.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let wk = state.positions[k].to_complex();
        let wdot = state.velocities[k];
        let mut sum = Complex64::new(0.0, 0.0);
        for j in 0..n {
            if j == k {
                continue;
            }
            let wj = state.positions[j].to_complex();
            let d = dist_halfplane(&state.positions[k], &state.positions[j]);
            if d < EPS_COLL {
                return Err(DynamicsError::Collision { i: k.min(j), j: k.max(j) });
            }
            let t = pair_norm_t(&state.positions[k], &state.positions[j]);
            let num = (wk.conj() - wk)
                * (wj.conj() - wj).powi(2)
                * (wk - wj)
                * (wj.conj() - wk);
            sum += state.bodies[j].mass * num / t.powi(3);
        }
        let prefactor = -(wk - wk.conj()).powi(2) / 2.0;
        let geodesic = 2.0 * wdot * wdot / (wk - wk.conj());
        out.push(prefactor * sum + geodesic);
    }
    Ok(out)
}

fn pair_norm_t(wk: &HalfPlanePoint, wj: &HalfPlanePoint) -> f64 {
    let dx = wk.re() - wj.re();
    let yk2 = wk.im() * wk.im();
    let yj2 = wj.im() * wj.im();
    (4.0 * dx * dx * (dx * dx + 2.0 * (yk2 + yj2)) + 4.0 * (yk2 - yj2) * (yk2 - yj2)).sqrt()
}

/// Largest pointwise gap between the conjugated and the direct closed-form
/// half-plane accelerations on a given state.
pub fn h2_form_discrepancy(state: &StateH2) -> Result<f64, DynamicsError> {
    let canonical = accel_h2(state)?;
    let direct = accel_h2_direct(state)?;
    Ok(canonical
        .iter()
        .zip(&direct)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}

/// Pair potential `U = sum_{i<j} m_i m_j coth(d_ij)` from masses and pairwise
/// distances.
fn potential_from_distances(
    bodies: &[Body],
    dist: impl Fn(usize, usize) -> f64,
) -> Result<f64, DynamicsError> {
    let n = bodies.len();
    let mut u = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = dist(i, j);
            if d < EPS_COLL {
                return Err(DynamicsError::Collision { i, j });
            }
            u += bodies[i].mass * bodies[j].mass / d.tanh();
        }
    }
    Ok(u)
}

/// Potential energy of a hyperboloid-model state. Pair distances use the
/// cancellation-free chordal form so separations near the collision
/// threshold still resolve.
pub fn potential_l2(state: &StateL2) -> Result<f64, DynamicsError> {
    potential_from_distances(&state.bodies, |i, j| {
        let chord_sq =
            chordal_sq(&state.positions[i].coords(), &state.positions[j].coords()).max(0.0);
        2.0 * (chord_sq.sqrt() / 2.0).asinh()
    })
}

/// Potential energy of a half-plane state.
pub fn potential_h2(state: &StateH2) -> Result<f64, DynamicsError> {
    potential_from_distances(&state.bodies, |i, j| {
        dist_halfplane(&state.positions[i], &state.positions[j])
    })
}

/// Kinetic energy `T = 1/2 sum m_i q'_i ⊙ q'_i` of a sheet state.
pub fn kinetic_l2(state: &StateL2) -> f64 {
    state
        .bodies
        .iter()
        .zip(&state.velocities)
        .map(|(b, v)| 0.5 * b.mass * minkowski_dot(v, v))
        .sum()
}

/// Kinetic energy `T = sum m_k |w'_k|^2 / (2 Im(w_k)^2)` of a half-plane
/// state. Equals the sheet value of the converted state.
pub fn kinetic_h2(state: &StateH2) -> f64 {
    state
        .bodies
        .iter()
        .zip(state.positions.iter().zip(&state.velocities))
        .map(|(b, (w, v))| 0.5 * b.mass * v.norm_sqr() / (w.im() * w.im()))
        .sum()
}

/// Total energy `E = T - U` of a sheet state.
pub fn total_energy_l2(state: &StateL2) -> Result<f64, DynamicsError> {
    Ok(kinetic_l2(state) - potential_l2(state)?)
}

/// Total energy `E = T - U` of a half-plane state.
pub fn total_energy_h2(state: &StateH2) -> Result<f64, DynamicsError> {
    Ok(kinetic_h2(state) - potential_h2(state)?)
}

/// The three conserved moment maps of the isometry group,
/// `L_xy = sum m (x y' - y x')`, `L_xz = sum m (x z' - z x')`,
/// `L_yz = sum m (y z' - z y')`.
pub fn first_integrals(state: &StateL2) -> [f64; 3] {
    let mut l = [0.0; 3];
    for (b, (p, v)) in state.bodies.iter().zip(state.positions.iter().zip(&state.velocities)) {
        let q = p.coords();
        l[0] += b.mass * (q.x * v.y - q.y * v.x);
        l[1] += b.mass * (q.x * v.z - q.z * v.x);
        l[2] += b.mass * (q.y * v.z - q.z * v.y);
    }
    l
}

/// Applies an isometry to every position and velocity of a state.
pub fn transform_state(state: &StateL2, g: &LorentzTransform) -> StateL2 {
    StateL2 {
        bodies: state.bodies.clone(),
        positions: state.positions.iter().map(|p| g.apply(p)).collect(),
        velocities: state.velocities.iter().map(|v| g.apply_vec(v)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeom::{boost_matrix, elliptic_matrix, hyperboloid_to_halfplane,
        parabolic_matrix};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_state(rng: &mut ChaCha8Rng, n: usize) -> StateL2 {
        loop {
            let bodies: Vec<Body> =
                (0..n).map(|_| Body::new(rng.gen_range(0.1..3.0)).unwrap()).collect();
            let positions: Vec<HyperboloidPoint> = (0..n)
                .map(|_| HyperboloidPoint::lift(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                .collect();
            let velocities: Vec<MinkowskiVec> = positions
                .iter()
                .map(|p| {
                    let raw = MinkowskiVec::new(
                        rng.gen_range(-1.0..1.0),
                        rng.gen_range(-1.0..1.0),
                        rng.gen_range(-1.0..1.0),
                    );
                    p.project_tangent(&raw)
                })
                .collect();
            // keep pairs well separated so force magnitudes stay moderate
            let mut ok = true;
            for i in 0..n {
                for j in (i + 1)..n {
                    if dist_hyperboloid(&positions[i], &positions[j]).unwrap() < 0.2 {
                        ok = false;
                    }
                }
            }
            if ok {
                return StateL2::new(bodies, positions, velocities).unwrap();
            }
        }
    }

    #[test]
    fn single_body_at_rest_has_zero_acceleration() {
        let state = StateL2::new(
            vec![Body::new(1.0).unwrap()],
            vec![HyperboloidPoint::APEX],
            vec![MinkowskiVec::ZERO],
        )
        .unwrap();
        let acc = accel_l2(&state).unwrap();
        assert_eq!(acc[0], MinkowskiVec::ZERO);
    }

    #[test]
    fn mirror_pair_accelerations_are_mirrored() {
        let a = 0.7f64;
        let p1 = HyperboloidPoint::new(MinkowskiVec::new(a.sinh(), 0.0, a.cosh())).unwrap();
        let p2 = HyperboloidPoint::new(MinkowskiVec::new(-a.sinh(), 0.0, a.cosh())).unwrap();
        let state = StateL2::new(
            vec![Body::new(1.0).unwrap(), Body::new(1.0).unwrap()],
            vec![p1, p2],
            vec![MinkowskiVec::ZERO, MinkowskiVec::ZERO],
        )
        .unwrap();
        let acc = accel_l2(&state).unwrap();
        assert_abs_diff_eq!(acc[0].x, -acc[1].x, epsilon = 1e-14);
        assert!(acc[0].x.abs() > 1e-3, "bodies must attract");
        assert_abs_diff_eq!(acc[0].y, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(acc[1].y, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(acc[0].z, acc[1].z, epsilon = 1e-14);
    }

    #[test]
    fn acceleration_satisfies_the_tangency_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let n = rng.gen_range(2..5);
            let state = random_state(&mut rng, n);
            let acc = accel_l2(&state).unwrap();
            for i in 0..n {
                let qa = minkowski_dot(&state.positions[i].coords(), &acc[i]);
                let vv = minkowski_dot(&state.velocities[i], &state.velocities[i]);
                assert!((qa + vv).abs() < 1e-12, "identity residual {}", (qa + vv).abs());
            }
        }
    }

    #[test]
    fn acceleration_is_equivariant_under_isometries() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..50 {
            let state = random_state(&mut rng, 3);
            let g = elliptic_matrix(rng.gen_range(0.0..6.28))
                .compose(&boost_matrix(rng.gen_range(-1.0..1.0)))
                .compose(&parabolic_matrix(rng.gen_range(-1.0..1.0)));
            let moved = transform_state(&state, &g);
            let acc_then_move: Vec<MinkowskiVec> =
                accel_l2(&state).unwrap().iter().map(|a| g.apply_vec(a)).collect();
            let move_then_acc = accel_l2(&moved).unwrap();
            for (a, b) in acc_then_move.iter().zip(&move_then_acc) {
                assert!(a.sub(b).max_abs() < 1e-10, "equivariance gap {}", a.sub(b).max_abs());
            }
        }
    }

    #[test]
    fn near_coincident_bodies_collide() {
        let p1 = HyperboloidPoint::APEX;
        let p2 = HyperboloidPoint::new(MinkowskiVec::new(
            0.0,
            f64::sinh(1e-9),
            f64::cosh(1e-9),
        ))
        .unwrap();
        let result = StateL2::new(
            vec![Body::new(1.0).unwrap(), Body::new(1.0).unwrap()],
            vec![p1, p2],
            vec![MinkowskiVec::ZERO, MinkowskiVec::ZERO],
        );
        assert!(matches!(result, Err(DynamicsError::Collision { i: 0, j: 1 })));
    }

    #[test]
    fn potential_of_a_single_pair_is_the_curved_cotangent() {
        for d in [0.3, 1.0, 2.5] {
            let p1 = HyperboloidPoint::APEX;
            let p2 =
                HyperboloidPoint::new(MinkowskiVec::new(0.0, f64::sinh(d), f64::cosh(d))).unwrap();
            let state = StateL2::new(
                vec![Body::new(1.0).unwrap(), Body::new(1.0).unwrap()],
                vec![p1, p2],
                vec![MinkowskiVec::ZERO, MinkowskiVec::ZERO],
            )
            .unwrap();
            assert_abs_diff_eq!(potential_l2(&state).unwrap(), 1.0 / d.tanh(), epsilon = 1e-13);
        }
    }

    #[test]
    fn potential_diverges_at_short_range() {
        let d = 1e-6f64;
        let p1 = HyperboloidPoint::APEX;
        let p2 = HyperboloidPoint::new(MinkowskiVec::new(0.0, d.sinh(), d.cosh())).unwrap();
        let state = StateL2::new(
            vec![Body::new(1.0).unwrap(), Body::new(1.0).unwrap()],
            vec![p1, p2],
            vec![MinkowskiVec::ZERO, MinkowskiVec::ZERO],
        )
        .unwrap();
        assert!(potential_l2(&state).unwrap() > 1e5);
    }

    #[test]
    fn potential_is_isometry_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let state = random_state(&mut rng, 4);
            let g = elliptic_matrix(rng.gen_range(0.0..6.28))
                .compose(&boost_matrix(rng.gen_range(-1.5..1.5)));
            let moved = transform_state(&state, &g);
            let u0 = potential_l2(&state).unwrap();
            let u1 = potential_l2(&moved).unwrap();
            assert!((u0 - u1).abs() < 1e-10 * (1.0 + u0.abs()));
        }
    }

    #[test]
    fn zero_velocities_have_zero_kinetic_energy() {
        let state = StateL2::new(
            vec![Body::new(2.0).unwrap()],
            vec![HyperboloidPoint::APEX],
            vec![MinkowskiVec::ZERO],
        )
        .unwrap();
        assert_eq!(kinetic_l2(&state), 0.0);
    }

    #[test]
    fn free_body_on_the_homothety_orbit() {
        // single body at i with velocity i omega: the orbit e^{omega t} i is a
        // constant-speed geodesic, so w'' = i omega^2
        let omega = 0.9;
        let state = StateH2::new(
            vec![Body::new(1.0).unwrap()],
            vec![HalfPlanePoint::I],
            vec![Complex64::new(0.0, omega)],
        )
        .unwrap();
        let acc = accel_h2(&state).unwrap();
        assert_abs_diff_eq!(acc[0].re, 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(acc[0].im, omega * omega, epsilon = 1e-13);
    }

    #[test]
    fn mirrored_half_plane_states_have_mirrored_accelerations() {
        let positions = [(0.4, 0.9), (-0.2, 1.4), (0.0, 2.0)];
        let velocities =
            [Complex64::new(0.1, 0.2), Complex64::new(-0.3, 0.05), Complex64::new(0.0, -0.1)];
        let bodies: Vec<Body> = [1.0, 2.0, 0.5].iter().map(|&m| Body::new(m).unwrap()).collect();
        let state = StateH2::new(
            bodies.clone(),
            positions.iter().map(|&(a, b)| HalfPlanePoint::new(a, b).unwrap()).collect(),
            velocities.to_vec(),
        )
        .unwrap();
        // mirror across the imaginary axis: w -> -conj w, w' -> -conj w'
        let mirrored = StateH2::new(
            bodies,
            positions.iter().map(|&(a, b)| HalfPlanePoint::new(-a, b).unwrap()).collect(),
            velocities.iter().map(|v| Complex64::new(-v.re, v.im)).collect(),
        )
        .unwrap();
        let acc = accel_h2(&state).unwrap();
        let acc_m = accel_h2(&mirrored).unwrap();
        for (a, b) in acc.iter().zip(&acc_m) {
            assert_abs_diff_eq!(a.re, -b.re, epsilon = 1e-12);
            assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn conjugated_acceleration_matches_the_orbit_second_derivative() {
        // a two-body collinear relative equilibrium: bodies at angles +-gamma
        // on the unit half circle, moved by the homothety w -> e^{omega t} w.
        // On the sheet this is a boost orbit with a closed form, so the
        // converted positions give an independent finite-difference oracle.
        let gamma = 0.6f64;
        let mass = 1.3f64;
        // tangential force balance for the pair (see releq::collinear)
        let (s, c) = gamma.sin_cos();
        let sinh_d = 2.0 * s / (c * c);
        let omega_sq = (c * c / s) * mass / (sinh_d * sinh_d);
        let omega = omega_sq.sqrt();

        let q0 = [
            HyperboloidPoint::new(MinkowskiVec::new(0.0, -s / c, 1.0 / c)).unwrap(),
            HyperboloidPoint::new(MinkowskiVec::new(0.0, s / c, 1.0 / c)).unwrap(),
        ];
        let t0 = 0.35;
        let orbit = |t: f64| -> Vec<Complex64> {
            let g = crate::hypergeom::lorentz::boost_x_matrix(omega * t);
            q0.iter().map(|q| hyperboloid_to_halfplane(&g.apply(q)).to_complex()).collect()
        };

        // state at t0: positions from the closed form, velocities pushed from
        // the exact boost generator K q = (z, 0, x)
        let g = crate::hypergeom::lorentz::boost_x_matrix(omega * t0);
        let mut positions = Vec::new();
        let mut velocities = Vec::new();
        for q in &q0 {
            let qt = g.apply(q);
            let cvec = qt.coords();
            let vel = TangentVec::new(qt, MinkowskiVec::new(cvec.z, 0.0, cvec.x).scale(omega))
                .unwrap();
            positions.push(hyperboloid_to_halfplane(&qt));
            velocities.push(pushforward_to_halfplane(&vel).unwrap());
        }
        let state = StateH2::new(
            vec![Body::new(mass).unwrap(), Body::new(mass).unwrap()],
            positions,
            velocities,
        )
        .unwrap();
        let acc = accel_h2(&state).unwrap();

        let h = 1e-3;
        let wp = orbit(t0 + h);
        let w0 = orbit(t0);
        let wm = orbit(t0 - h);
        for k in 0..2 {
            let fd = (wp[k] - 2.0 * w0[k] + wm[k]) / (h * h);
            assert!((acc[k] - fd).norm() < 1e-7, "gap {}", (acc[k] - fd).norm());
        }
    }

    #[test]
    fn direct_half_plane_form_disagrees_with_the_conjugated_one() {
        // measured gap between the two closed forms; the conjugated route is
        // the one validated against the sheet dynamics above
        let state = StateH2::new(
            vec![Body::new(1.0).unwrap(), Body::new(2.0).unwrap(), Body::new(0.7).unwrap()],
            vec![
                HalfPlanePoint::new(0.5, 0.9).unwrap(),
                HalfPlanePoint::new(-0.8, 1.7).unwrap(),
                HalfPlanePoint::new(0.1, 0.6).unwrap(),
            ],
            vec![
                Complex64::new(0.1, 0.0),
                Complex64::new(0.0, 0.2),
                Complex64::new(-0.1, 0.1),
            ],
        )
        .unwrap();
        let gap = h2_form_discrepancy(&state).unwrap();
        println!("measured half-plane form discrepancy: {gap:e}");
        assert!(gap > 1e-4, "the two forms are expected to differ, gap = {gap:e}");
    }

    #[test]
    fn kinetic_energy_agrees_across_models() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..20 {
            let state = random_state(&mut rng, 3);
            let h2 = StateH2::new(
                state.bodies.clone(),
                state.positions.iter().map(hyperboloid_to_halfplane).collect(),
                state
                    .positions
                    .iter()
                    .zip(&state.velocities)
                    .map(|(p, v)| {
                        pushforward_to_halfplane(&TangentVec::new_unchecked(*p, *v)).unwrap()
                    })
                    .collect(),
            )
            .unwrap();
            let t_sheet = kinetic_l2(&state);
            let t_plane = kinetic_h2(&h2);
            assert!((t_sheet - t_plane).abs() < 1e-7 * (1.0 + t_sheet));
        }
    }
}
