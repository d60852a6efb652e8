//! Five-body collinear relative equilibria under a homothety of the half
//! plane.
//!
//! The configuration puts five bodies on the unit half circle (the canonical
//! geodesic), mirror-symmetric about the imaginary axis:
//!
//! ```text
//! w_1 = ( sin a,       cos a )          mass mu
//! w_2 = (-sin a,       cos a )          mass mu
//! w_3 = ( 0,           1     )          mass M
//! w_4 = ( sin(a+b),    cos(a+b) )       mass m
//! w_5 = (-sin(a+b),    cos(a+b) )       mass m
//! ```
//!
//! with `0 < a < a + b < pi/2`. The candidate motion is `w_j(t) = e^{w t}
//! w_j(0)`. Mirror symmetry makes body 3 exact for any masses and reduces
//! the system to two scalar balance conditions, one from body 1 and one from
//! body 4; a relative equilibrium needs them to share a common squared rate.
//!
//! Two versions of those conditions are provided.
//!
//! * [`omega1_sq`] and [`omega2_sq`] are fixed closed-form series whose
//!   mass-basis coefficients [`f_coeffs`] drive the sign-region analysis:
//!   the boundary polynomial [`pbar`], its root [`pbar_root`], the threshold
//!   angle [`alpha1`], and the region map [`f2_region`].
//! * [`omega1_sq_balance`] and [`omega2_sq_balance`] evaluate the tangential
//!   force balance of the equations of motion directly. For body k at
//!   circle angle `a_k` from the apex (so `sin a_k` is signed) the balance
//!   reads
//!
//!   ```text
//!   omega^2 = cos^4(a_k) / sin(a_k)
//!             * sum_{j != k} m_j cos^2(a_j) sign(s_k - s_j) / (s_k - s_j)^2,
//!   ```
//!
//!   with `s = sin a`; the pair separations enter through
//!   `sinh d_kj = |s_k - s_j| / (cos a_k cos a_j)`.
//!
//! The two families do not coincide (the comparison tests measure the gap).
//! The balance route is the one consistent with the dynamics module, so
//! [`solve_masses`] uses it for the returned masses and rate, while the sign
//! gate on `f2` follows the closed-form route. Solutions verify against the
//! half-plane equations of motion through [`verify_collinear_re`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{accel_h2, integrate, Body, StateH2, StateL2};
use crate::error::ReleqError;
use crate::hypergeom::{
    dist_hyperboloid, halfplane_to_hyperboloid, pushforward_to_hyperboloid, HalfPlanePoint,
};

use super::residual::ResidualReport;

const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;

/// Angles and masses of the symmetric five-body collinear configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollinearParams {
    pub alpha: f64,
    pub beta: f64,
    pub m: f64,
    pub big_m: f64,
    pub mu: f64,
}

impl CollinearParams {
    pub fn new(alpha: f64, beta: f64, m: f64, big_m: f64, mu: f64) -> Result<Self, ReleqError> {
        validate_angles(alpha, beta)?;
        for (name, v) in [("m", m), ("M", big_m), ("mu", mu)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(ReleqError::InvalidParams { what: format!("{name} = {v}") });
            }
        }
        Ok(CollinearParams { alpha, beta, m, big_m, mu })
    }
}

fn validate_angles(alpha: f64, beta: f64) -> Result<(), ReleqError> {
    if !(alpha.is_finite() && beta.is_finite() && alpha > 0.0 && beta > 0.0
        && alpha + beta < FRAC_PI_2)
    {
        return Err(ReleqError::InvalidParams {
            what: format!("angles must satisfy 0 < alpha < alpha + beta < pi/2, got alpha = {alpha}, beta = {beta}"),
        });
    }
    Ok(())
}

/// A solved member of the collinear family. `f1 M + f2 m + f3 mu = 0` holds
/// for the stored coefficients, and `omega_sq` is the common squared rate of
/// the two balance equations at these masses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollinearSolution {
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
}

/// Initial positions on the unit half circle.
pub fn collinear_initial(alpha: f64, beta: f64) -> Result<Vec<HalfPlanePoint>, ReleqError> {
    validate_angles(alpha, beta)?;
    let (sa, ca) = alpha.sin_cos();
    let (sab, cab) = (alpha + beta).sin_cos();
    Ok(vec![
        HalfPlanePoint::new(sa, ca).expect("inside the upper half plane"),
        HalfPlanePoint::new(-sa, ca).expect("inside the upper half plane"),
        HalfPlanePoint::I,
        HalfPlanePoint::new(sab, cab).expect("inside the upper half plane"),
        HalfPlanePoint::new(-sab, cab).expect("inside the upper half plane"),
    ])
}

// ---------------------------------------------------------------------------
// closed-form coefficient route
// ---------------------------------------------------------------------------

/// Closed-form squared-rate series attached to the inner symmetric pair
/// (body 1). Linear in the masses.
pub fn omega1_sq(alpha: f64, beta: f64, m: f64, big_m: f64, mu: f64) -> f64 {
    let (sa, ca) = alpha.sin_cos();
    let (sab, cab) = (alpha + beta).sin_cos();
    let pref = -ca.powi(4) / sa;
    let t_mu = -2.0 * mu * sa * ca * ca / (1.0 + sa * sa).powi(3);
    let t_big_m = -big_m * sa;
    let t_m_near = m * cab * cab * (sab - sa) / (1.0 - sa * sab).powi(3);
    let t_m_far = -m * cab * cab * (sab + sa) / (sa * sab + 1.0).powi(3);
    pref * (t_mu + t_big_m + t_m_near + t_m_far)
}

/// Closed-form squared-rate series attached to the outer symmetric pair
/// (body 4). Linear in the masses.
pub fn omega2_sq(alpha: f64, beta: f64, m: f64, big_m: f64, mu: f64) -> f64 {
    let (sa, ca) = alpha.sin_cos();
    let (sab, cab) = (alpha + beta).sin_cos();
    let pref = -cab.powi(4) / sab;
    let t_mu_near = -mu * ca * ca * (sab - sa) / (1.0 - sa * sab).powi(3);
    let t_mu_far = -mu * ca * ca * (sab + sa) / (sa * sab + 1.0).powi(3);
    let t_big_m = -big_m * sab;
    let t_m = -2.0 * m * cab * cab * sab / (sab * sab + 1.0).powi(3);
    pref * (t_mu_near + t_mu_far + t_big_m + t_m)
}

/// Mass-basis coefficients `(f1, f2, f3)` of `omega1_sq - omega2_sq`, so that
/// the difference equals `f1 M + f2 m + f3 mu` for any masses.
pub fn f_coeffs(alpha: f64, beta: f64) -> (f64, f64, f64) {
    let f1 = omega1_sq(alpha, beta, 0.0, 1.0, 0.0) - omega2_sq(alpha, beta, 0.0, 1.0, 0.0);
    let f2 = omega1_sq(alpha, beta, 1.0, 0.0, 0.0) - omega2_sq(alpha, beta, 1.0, 0.0, 0.0);
    let f3 = omega1_sq(alpha, beta, 0.0, 0.0, 1.0) - omega2_sq(alpha, beta, 0.0, 0.0, 1.0);
    (f1, f2, f3)
}

/// Alternate combined closed form of the same coefficients, written with the
/// angle difference `alpha - beta` inside the cubed denominators. Disagrees
/// with [`f_coeffs`]; retained so the gap can be measured.
pub fn f_coeffs_combined_form(alpha: f64, beta: f64) -> (f64, f64, f64) {
    let (sa, ca) = alpha.sin_cos();
    let (sab, cab) = (alpha + beta).sin_cos();
    let samb = (alpha - beta).sin();
    let dm = (1.0 - sa * samb).powi(3);
    let dp = (1.0 + sa * samb).powi(3);
    let shared_near = cab * cab * ca * ca * (sab - sa) / dm;
    let shared_far = cab * cab * ca * ca * (sab + sa) / dp;

    let f1 = ca.powi(4) - cab.powi(4);
    let f2 = -shared_near * (ca * ca / sa) + shared_far * (ca * ca / sa)
        - 2.0 * cab.powi(6) / (1.0 + sab * sab).powi(3);
    let f3 = -shared_near * (cab * cab / sab) - shared_far * (cab * cab / sab)
        + 2.0 * ca.powi(6) / (1.0 + sa * sa).powi(3);
    (f1, f2, f3)
}

// ---------------------------------------------------------------------------
// force-balance route
// ---------------------------------------------------------------------------

/// Tangential force balance for body `k` of a collinear configuration on the
/// unit half circle, moved by the homothety. `angles[k]` is the signed circle
/// angle measured from the apex; the balance requires `sin(angles[k]) != 0`.
fn geodesic_balance_omega_sq(angles: &[f64], masses: &[f64], k: usize) -> f64 {
    let (sk, ck) = angles[k].sin_cos();
    debug_assert!(sk != 0.0, "balance is singular on the axis");
    let mut sum = 0.0;
    for (j, (&aj, &mj)) in angles.iter().zip(masses).enumerate() {
        if j == k {
            continue;
        }
        let (sj, cj) = aj.sin_cos();
        let ds = sk - sj;
        sum += mj * cj * cj * ds.signum() / (ds * ds);
    }
    ck.powi(4) / sk * sum
}

fn five_body_angles(alpha: f64, beta: f64) -> [f64; 5] {
    [alpha, -alpha, 0.0, alpha + beta, -(alpha + beta)]
}

fn five_body_masses(m: f64, big_m: f64, mu: f64) -> [f64; 5] {
    [mu, mu, big_m, m, m]
}

/// Squared rate demanded by body 1's force balance. Linear in the masses.
pub fn omega1_sq_balance(alpha: f64, beta: f64, m: f64, big_m: f64, mu: f64) -> f64 {
    geodesic_balance_omega_sq(&five_body_angles(alpha, beta), &five_body_masses(m, big_m, mu), 0)
}

/// Squared rate demanded by body 4's force balance. Linear in the masses.
pub fn omega2_sq_balance(alpha: f64, beta: f64, m: f64, big_m: f64, mu: f64) -> f64 {
    geodesic_balance_omega_sq(&five_body_angles(alpha, beta), &five_body_masses(m, big_m, mu), 3)
}

/// Mass-basis coefficients of `omega1_sq_balance - omega2_sq_balance`.
pub fn f_coeffs_balance(alpha: f64, beta: f64) -> (f64, f64, f64) {
    let d = |m: f64, big_m: f64, mu: f64| {
        omega1_sq_balance(alpha, beta, m, big_m, mu)
            - omega2_sq_balance(alpha, beta, m, big_m, mu)
    };
    (d(0.0, 1.0, 0.0), d(1.0, 0.0, 0.0), d(0.0, 0.0, 1.0))
}

// ---------------------------------------------------------------------------
// boundary polynomial
// ---------------------------------------------------------------------------

/// The cubic `-(4x^3 - 4x^2 - 3x + 1)` governing the sign of the closed-form
/// `f2` along the line `beta = pi/2 - alpha` via `x = cos^2(alpha)`.
pub fn pbar(x: f64) -> f64 {
    -(((4.0 * x - 4.0) * x - 3.0) * x + 1.0)
}

/// Derivative of [`pbar`].
pub fn pbar_prime(x: f64) -> f64 {
    -((12.0 * x - 8.0) * x - 3.0)
}

/// The boundary polynomial in the angle variable, `P(alpha) =
/// pbar(cos^2 alpha)`.
pub fn boundary_p(alpha: f64) -> f64 {
    let c = alpha.cos();
    pbar(c * c)
}

/// Denominator of the boundary closed form,
/// `Q(alpha) = (4 cos^4 alpha - 8 cos^2 alpha + 5)^3`.
pub fn boundary_q(alpha: f64) -> f64 {
    let c2 = alpha.cos().powi(2);
    (4.0 * c2 * c2 - 8.0 * c2 + 5.0).powi(3)
}

/// Unique root of [`pbar`] in (0, 1), located by bisection to width 1e-14.
pub fn pbar_root() -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    debug_assert!(pbar(lo) < 0.0 && pbar(hi) > 0.0);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if pbar(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Threshold angle `alpha_1 = arccos(sqrt(x_0))` with `x_0` the [`pbar_root`].
/// The closed-form boundary expression changes sign exactly once in
/// (0, pi/2), here.
pub fn alpha1() -> f64 {
    pbar_root().sqrt().acos()
}

/// Both readings of the closed-form `f2` on the boundary line: the limit of
/// `f_coeffs(alpha, pi/2 - alpha - eps).f2` as `eps -> 0`, and the closed
/// form `P/Q`.
///
/// The two do not agree: every mass-m term of the series carries a factor
/// `cos^2(alpha + beta)`, so the limit is zero for every alpha, while `P/Q`
/// is generically nonzero. Near the line the series behaves as
/// `-4 cos^2(alpha + beta)`, which is what makes boundary-adjacent cells of
/// the region map negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryF2 {
    /// Richardson-extrapolated limit of the series `f2` toward the line.
    pub limit: f64,
    /// The closed form `P(alpha) / Q(alpha)`.
    pub closed_form: f64,
}

/// Evaluates [`BoundaryF2`] at `alpha`.
pub fn boundary_f2(alpha: f64) -> Result<BoundaryF2, ReleqError> {
    if !(alpha.is_finite() && alpha > 0.0 && alpha < FRAC_PI_2) {
        return Err(ReleqError::InvalidParams { what: format!("alpha = {alpha}") });
    }
    let eps = 1e-3f64.min((FRAC_PI_2 - alpha) / 4.0);
    let f = |e: f64| f_coeffs(alpha, FRAC_PI_2 - alpha - e).1;
    // the series approaches the line quadratically in eps
    let limit = (4.0 * f(eps / 2.0) - f(eps)) / 3.0;
    Ok(BoundaryF2 { limit, closed_form: boundary_p(alpha) / boundary_q(alpha) })
}

// ---------------------------------------------------------------------------
// region map
// ---------------------------------------------------------------------------

/// One cell of the admissible-angle region map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionCell {
    pub alpha: f64,
    pub beta: f64,
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    /// `Some(omega_sq)` when [`solve_masses`] succeeds at this cell.
    pub omega_sq: Option<f64>,
}

/// Row-major grid over the open triangle
/// `{ 0 < alpha < pi/2, 0 < beta < pi/2 - alpha }`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionMap {
    pub alpha_steps: usize,
    pub beta_steps: usize,
    pub cells: Vec<RegionCell>,
}

impl RegionMap {
    pub fn has_negative_f2(&self) -> bool {
        self.cells.iter().any(|c| c.f2 < 0.0)
    }

    pub fn has_positive_f2(&self) -> bool {
        self.cells.iter().any(|c| c.f2 > 0.0)
    }
}

/// Evaluates the closed-form coefficients and the mass solve on an
/// `alpha_steps x beta_steps` grid of interior points.
pub fn f2_region(alpha_steps: usize, beta_steps: usize) -> Result<RegionMap, ReleqError> {
    if alpha_steps < 2 || beta_steps < 2 {
        return Err(ReleqError::InvalidParams {
            what: format!("grid must be at least 2x2, got {alpha_steps}x{beta_steps}"),
        });
    }
    let mut cells = Vec::with_capacity(alpha_steps * beta_steps);
    for i in 0..alpha_steps {
        let alpha = (i + 1) as f64 * FRAC_PI_2 / (alpha_steps + 1) as f64;
        for j in 0..beta_steps {
            let beta = (j + 1) as f64 * (FRAC_PI_2 - alpha) / (beta_steps + 1) as f64;
            let (f1, f2, f3) = f_coeffs(alpha, beta);
            let omega_sq = solve_masses(alpha, beta).ok().map(|s| s.omega_sq);
            cells.push(RegionCell { alpha, beta, f1, f2, f3, omega_sq });
        }
    }
    Ok(RegionMap { alpha_steps, beta_steps, cells })
}

// ---------------------------------------------------------------------------
// mass solve and verification
// ---------------------------------------------------------------------------

/// Solves for masses making the two balance equations share one rate, under
/// the normalization `M = mu = 1`.
///
/// The admissibility gate is the closed-form sign condition `f2 < 0`. The
/// returned mass `m = (f1 + f3) / (-f2)` and rate use the force-balance
/// coefficients, so the solution satisfies the equations of motion (see
/// [`verify_collinear_re`]). A non-positive solved rate is surfaced as
/// [`ReleqError::NonpositiveOmegaSq`] carrying the solved data.
pub fn solve_masses(alpha: f64, beta: f64) -> Result<CollinearSolution, ReleqError> {
    validate_angles(alpha, beta)?;
    let (_, f2_gate, _) = f_coeffs(alpha, beta);
    if f2_gate >= 0.0 {
        return Err(ReleqError::NoSolution { reason: "f2>=0".into(), f2: f2_gate });
    }
    let (f1, f2, f3) = f_coeffs_balance(alpha, beta);
    let m = (f1 + f3) / (-f2);
    if !(m.is_finite() && m > 0.0) {
        return Err(ReleqError::NoSolution {
            reason: format!("solved mass is not positive (m = {m})"),
            f2: f2_gate,
        });
    }
    let omega_sq = omega1_sq_balance(alpha, beta, m, 1.0, 1.0);
    let solution =
        CollinearSolution { alpha, beta, m, big_m: 1.0, mu: 1.0, omega_sq, f1, f2, f3 };
    if omega_sq <= 0.0 {
        return Err(ReleqError::NonpositiveOmegaSq { omega_sq, solution: Box::new(solution) });
    }
    Ok(solution)
}

/// Substitutes the homothety orbit `w_j(t) = e^{omega t} w_j(0)` into the
/// half-plane equations of motion at each sampled time and reports per-body
/// residuals; additionally integrates the converted state from t = 0 with
/// step 1e-4 and reports the largest pairwise-distance deviation.
pub fn verify_collinear_re(
    sol: &CollinearSolution,
    times: &[f64],
) -> Result<ResidualReport, ReleqError> {
    if !(sol.omega_sq > 0.0) {
        return Err(ReleqError::InvalidParams {
            what: format!("verification needs omega_sq > 0, got {}", sol.omega_sq),
        });
    }
    let omega = sol.omega_sq.sqrt();
    let initial = collinear_initial(sol.alpha, sol.beta)?;
    let bodies: Vec<Body> = five_body_masses(sol.m, sol.big_m, sol.mu)
        .iter()
        .map(|&mass| Body::new(mass).map_err(ReleqError::from))
        .collect::<Result<_, _>>()?;

    let mut per_body = vec![0.0f64; 5];
    for &t in times {
        let scale = (omega * t).exp();
        let positions: Vec<HalfPlanePoint> = initial
            .iter()
            .map(|w| {
                HalfPlanePoint::new(scale * w.re(), scale * w.im())
                    .expect("homothety preserves the upper half plane")
            })
            .collect();
        let velocities: Vec<Complex64> =
            positions.iter().map(|w| omega * w.to_complex()).collect();
        let state = StateH2::new(bodies.clone(), positions.clone(), velocities)
            .map_err(ReleqError::from)?;
        let acc = accel_h2(&state).map_err(ReleqError::from)?;
        for (k, a) in acc.iter().enumerate() {
            let required = sol.omega_sq * positions[k].to_complex();
            per_body[k] = per_body[k].max((required - a).norm());
        }
    }

    // integrate the converted state and watch the mutual distances
    let sheet_positions: Vec<_> = initial.iter().map(halfplane_to_hyperboloid).collect();
    let sheet_velocities: Vec<_> = initial
        .iter()
        .zip(&sheet_positions)
        .map(|(w, _)| {
            pushforward_to_hyperboloid(w, omega * w.to_complex())
                .map(|tv| tv.v)
                .map_err(ReleqError::from)
        })
        .collect::<Result<_, _>>()?;
    let state0 = StateL2::new(bodies, sheet_positions, sheet_velocities)
        .map_err(ReleqError::from)?;
    let t_end = times.iter().copied().fold(0.0f64, f64::max).max(1.0);
    let outcome = integrate(&state0, t_end, 1e-4).map_err(ReleqError::from)?;
    if let Some((i, j, _)) = outcome.collision {
        return Err(ReleqError::Dynamics(crate::error::DynamicsError::Collision { i, j }));
    }
    let initial_dist = pairwise_distances(&state0);
    let mut drift = 0.0f64;
    for state in &outcome.trajectory.states {
        for (d, d0) in pairwise_distances(state).iter().zip(&initial_dist) {
            drift = drift.max((d - d0).abs());
        }
    }

    Ok(ResidualReport {
        per_body_residual: per_body,
        zsum: None,
        term_signs: Vec::new(),
        distance_drift: Some(drift),
    })
}

fn pairwise_distances(state: &StateL2) -> Vec<f64> {
    let n = state.len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            out.push(
                dist_hyperboloid(&state.positions[i], &state.positions[j])
                    .expect("states stay on the sheet"),
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn initial_positions_sit_on_the_unit_circle() {
        let pts = collinear_initial(std::f64::consts::FRAC_PI_6, 0.4).unwrap();
        assert_abs_diff_eq!(pts[2].re(), 0.0, epsilon = 0.0);
        assert_abs_diff_eq!(pts[2].im(), 1.0, epsilon = 0.0);
        assert_abs_diff_eq!(pts[0].re(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(pts[0].im(), 3.0f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(pts[1].re(), -0.5, epsilon = 1e-15);
        for p in &pts {
            assert_abs_diff_eq!(p.re() * p.re() + p.im() * p.im(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn initial_positions_are_collinear_on_the_canonical_geodesic() {
        // the unit half circle converts to the sheet geodesic {x = 0}
        let pts = collinear_initial(0.5, 0.31).unwrap();
        for w in &pts {
            let q = halfplane_to_hyperboloid(w);
            assert_abs_diff_eq!(q.x(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn angle_validation_rejects_inadmissible_input() {
        assert!(collinear_initial(0.0, 0.3).is_err());
        assert!(collinear_initial(1.0, 0.6).is_err());
        assert!(collinear_initial(2.0, 0.1).is_err());
        assert!(CollinearParams::new(0.4, 0.2, 1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn rates_vanish_with_the_masses() {
        assert_eq!(omega1_sq(0.7, 0.4, 0.0, 0.0, 0.0), 0.0);
        assert_eq!(omega2_sq(0.7, 0.4, 0.0, 0.0, 0.0), 0.0);
        assert_eq!(omega1_sq_balance(0.7, 0.4, 0.0, 0.0, 0.0), 0.0);
        assert_eq!(omega2_sq_balance(0.7, 0.4, 0.0, 0.0, 0.0), 0.0);
    }

    #[test]
    fn central_mass_term_of_the_series_reduces_to_cos_fourth() {
        for alpha in [0.3, 0.8, 1.2] {
            let value = omega1_sq(alpha, 0.2, 0.0, 1.0, 0.0);
            assert_relative_eq!(value, alpha.cos().powi(4), max_relative = 1e-14);
        }
    }

    #[test]
    fn series_coefficients_are_exactly_linear() {
        // fixed point from the coefficient contract
        let (alpha, beta) = (0.5, 0.3);
        let (big_m, m, mu) = (3.0, 2.0, 5.0);
        let (f1, f2, f3) = f_coeffs(alpha, beta);
        let direct = omega1_sq(alpha, beta, m, big_m, mu) - omega2_sq(alpha, beta, m, big_m, mu);
        let linear = f1 * big_m + f2 * m + f3 * mu;
        assert!((direct - linear).abs() <= 1e-12, "gap {}", (direct - linear).abs());
    }

    #[test]
    fn balance_coefficients_are_exactly_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let alpha = rng.gen_range(0.1..1.3);
            let beta = rng.gen_range(0.05..(FRAC_PI_2 - alpha - 0.02));
            let (m, big_m, mu) =
                (rng.gen_range(0.0..5.0), rng.gen_range(0.0..5.0), rng.gen_range(0.0..5.0));
            let (f1, f2, f3) = f_coeffs_balance(alpha, beta);
            let direct = omega1_sq_balance(alpha, beta, m, big_m, mu)
                - omega2_sq_balance(alpha, beta, m, big_m, mu);
            let linear = f1 * big_m + f2 * m + f3 * mu;
            assert!(
                (direct - linear).abs() <= 1e-12 * (1.0 + direct.abs()),
                "gap {}",
                (direct - linear).abs()
            );
        }
    }

    #[test]
    fn f1_limit_at_vanishing_alpha() {
        let beta = 0.8;
        let (f1, _, _) = f_coeffs(1e-9, beta);
        assert_abs_diff_eq!(f1, 1.0 - beta.cos().powi(4), epsilon = 1e-7);
    }

    #[test]
    fn f1_is_positive_for_both_routes() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..500 {
            let alpha = rng.gen_range(0.02..1.5);
            let beta = rng.gen_range(0.01..(FRAC_PI_2 - alpha - 0.005));
            assert!(f_coeffs(alpha, beta).0 > 0.0);
            assert!(f_coeffs_balance(alpha, beta).0 > 0.0);
        }
    }

    #[test]
    fn combined_form_disagrees_with_the_series_basis() {
        let mut worst = 0.0f64;
        for i in 1..20 {
            let alpha = i as f64 * FRAC_PI_2 / 21.0;
            for j in 1..20 {
                let beta = j as f64 * (FRAC_PI_2 - alpha) / 21.0;
                let a = f_coeffs(alpha, beta);
                let b = f_coeffs_combined_form(alpha, beta);
                worst = worst
                    .max((a.0 - b.0).abs())
                    .max((a.1 - b.1).abs())
                    .max((a.2 - b.2).abs());
            }
        }
        println!("measured combined-form coefficient gap: {worst:e}");
        assert!(worst > 1e-3, "expected a real gap, got {worst:e}");
        // the M coefficient itself is identical in both forms
        let (f1a, _, _) = f_coeffs(0.6, 0.5);
        let (f1b, _, _) = f_coeffs_combined_form(0.6, 0.5);
        assert_relative_eq!(f1a, f1b, max_relative = 1e-12);
    }

    #[test]
    fn boundary_polynomial_printed_values() {
        assert_eq!(pbar(1.0), 2.0);
        assert_eq!(pbar(0.0), -1.0);
        assert_eq!(boundary_p(0.0), 2.0);
        assert_eq!(boundary_p(FRAC_PI_2), -1.0);
    }

    #[test]
    fn boundary_polynomial_critical_point() {
        let x = 1.0 / 3.0 + 13.0f64.sqrt() / 6.0;
        assert_abs_diff_eq!(pbar_prime(x), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn pbar_root_is_the_unique_sign_change_in_the_unit_interval() {
        let x0 = pbar_root();
        assert!(x0 > 0.25 && x0 < 0.3, "x0 = {x0}");
        assert!(pbar(x0).abs() <= 1e-13);
        // uniqueness: exactly one sign change on a fine grid
        let mut changes = 0;
        let mut prev = pbar(1e-6);
        for i in 1..=10_000 {
            let x = i as f64 / 10_000.0;
            let v = pbar(x);
            if prev.signum() != v.signum() {
                changes += 1;
            }
            prev = v;
        }
        assert_eq!(changes, 1);
    }

    #[test]
    fn threshold_angle_lies_in_the_open_quarter_turn() {
        let a1 = alpha1();
        assert!(a1 > 0.0 && a1 < FRAC_PI_2);
        // the closed form changes sign exactly at alpha1
        assert!(boundary_p(a1 - 1e-6) / boundary_q(a1 - 1e-6) > 0.0);
        assert!(boundary_p(a1 + 1e-6) / boundary_q(a1 + 1e-6) < 0.0);
    }

    #[test]
    fn boundary_series_limit_and_closed_form_disagree() {
        // the series f2 vanishes toward the line while P/Q does not; measure
        // and report the gap rather than hiding it
        let mut max_gap = 0.0f64;
        for alpha in [0.3, 0.5, 0.9, 1.2] {
            let b = boundary_f2(alpha).unwrap();
            assert_abs_diff_eq!(b.limit, 0.0, epsilon = 1e-6);
            max_gap = max_gap.max((b.limit - b.closed_form).abs());
        }
        println!("measured boundary f2 gap (series limit vs closed form): {max_gap:e}");
        assert!(max_gap > 0.5);
    }

    #[test]
    fn series_f2_is_negative_in_a_strip_along_the_line() {
        for i in 1..40 {
            let alpha = i as f64 * FRAC_PI_2 / 41.0;
            let beta = FRAC_PI_2 - alpha - 1e-3;
            let (_, f2, _) = f_coeffs(alpha, beta);
            assert!(f2 < 0.0, "f2({alpha}, {beta}) = {f2}");
            // leading behavior -4 cos^2(alpha + beta)
            let cab2 = (alpha + beta).cos().powi(2);
            assert_relative_eq!(f2 / cab2, -4.0, max_relative = 1e-2);
        }
    }

    #[test]
    fn series_f2_is_positive_near_the_origin() {
        let (_, f2, _) = f_coeffs(0.1, 0.1);
        assert!(f2 > 0.0, "f2(0.1, 0.1) = {f2}");
        // small-angle behavior ~ 4 (sin^2(alpha + beta) - sin^2 alpha)
        let (_, f2_tiny, _) = f_coeffs(0.01, 0.01);
        let lead = 4.0 * ((0.02f64).sin().powi(2) - (0.01f64).sin().powi(2));
        assert_relative_eq!(f2_tiny / lead, 1.0, max_relative = 0.01);
    }

    #[test]
    fn solve_refuses_the_positive_f2_region() {
        match solve_masses(0.1, 0.1) {
            Err(ReleqError::NoSolution { reason, f2 }) => {
                assert_eq!(reason, "f2>=0");
                assert!(f2 > 0.0);
            }
            other => panic!("expected the sign gate to fire, got {other:?}"),
        }
    }

    #[test]
    fn solve_near_the_line_surfaces_a_nonpositive_rate_distinctly() {
        // close to the boundary line the gate opens, the linear solve closes,
        // and the rate comes out non-positive; the outcome carries the data
        let alpha = alpha1() + 0.1;
        let beta = FRAC_PI_2 - alpha - 0.01;
        match solve_masses(alpha, beta) {
            Ok(sol) => {
                assert!(sol.m > 0.0);
                let residual = sol.f1 * sol.big_m + sol.f2 * sol.m + sol.f3 * sol.mu;
                assert!(residual.abs() <= 1e-12);
            }
            Err(ReleqError::NonpositiveOmegaSq { omega_sq, solution }) => {
                assert!(omega_sq <= 0.0);
                assert!(solution.m > 0.0);
                let residual = solution.f1 * solution.big_m
                    + solution.f2 * solution.m
                    + solution.f3 * solution.mu;
                assert!(residual.abs() <= 1e-12, "linear residual {residual}");
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn solved_interior_point_is_a_genuine_relative_equilibrium() {
        let sol = solve_masses(0.8, 0.5).unwrap();
        assert!(sol.m > 0.0);
        assert!(sol.omega_sq > 0.0);
        let residual = sol.f1 * sol.big_m + sol.f2 * sol.m + sol.f3 * sol.mu;
        assert!(residual.abs() <= 1e-12);
        let report = verify_collinear_re(&sol, &[0.0, 0.5, 1.0]).unwrap();
        assert!(report.max_residual() <= 1e-8, "residual {}", report.max_residual());
        assert!(report.distance_drift.unwrap() <= 1e-6);
    }

    #[test]
    fn series_rate_is_not_a_force_balance() {
        // solving the linear condition with the closed-form series and
        // feeding its rate to the dynamics leaves a macroscopic defect; the
        // gap is reported, not hidden
        let (alpha, beta) = (0.8, 0.5);
        let (f1, f2, f3) = f_coeffs(alpha, beta);
        assert!(f2 < 0.0);
        let m = (f1 + f3) / (-f2);
        assert!(m > 0.0);
        let omega_sq = omega1_sq(alpha, beta, m, 1.0, 1.0);
        assert!(omega_sq > 0.0, "series rate {omega_sq}");
        let sol = CollinearSolution {
            alpha,
            beta,
            m,
            big_m: 1.0,
            mu: 1.0,
            omega_sq,
            f1,
            f2,
            f3,
        };
        let report = verify_collinear_re(&sol, &[0.0]).unwrap();
        println!(
            "measured dynamics residual of the series rate: {:e}",
            report.max_residual()
        );
        assert!(report.max_residual() > 1e-4);
    }

    #[test]
    fn central_body_is_exact_for_any_masses() {
        // a perturbed non-equilibrium: masses and rate off the solved values
        let base = solve_masses(0.8, 0.5).unwrap();
        let sol = CollinearSolution {
            m: base.m * 1.4,
            mu: 0.8,
            omega_sq: base.omega_sq * 1.3,
            ..base
        };
        let report = verify_collinear_re(&sol, &[0.0, 0.7]).unwrap();
        assert!(report.max_residual() > 1e-6, "perturbation must leave a defect");
        assert!(report.per_body_residual[2] <= 1e-12, "body 3 residual {}",
            report.per_body_residual[2]);
    }

    #[test]
    fn mirror_partners_share_their_residuals() {
        let base = solve_masses(0.8, 0.5).unwrap();
        let sol = CollinearSolution { m: base.m * 0.7, omega_sq: base.omega_sq * 1.1, ..base };
        let report = verify_collinear_re(&sol, &[0.0, 0.5]).unwrap();
        assert_abs_diff_eq!(
            report.per_body_residual[0],
            report.per_body_residual[1],
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            report.per_body_residual[3],
            report.per_body_residual[4],
            epsilon = 1e-12
        );
    }

    #[test]
    fn homothety_orbits_preserve_mutual_distances_in_closed_form() {
        let pts = collinear_initial(0.9, 0.4).unwrap();
        let omega = 0.37;
        let dist_at = |t: f64| -> Vec<f64> {
            let scale = (omega * t).exp();
            let moved: Vec<HalfPlanePoint> = pts
                .iter()
                .map(|w| HalfPlanePoint::new(scale * w.re(), scale * w.im()).unwrap())
                .collect();
            let mut out = Vec::new();
            for i in 0..moved.len() {
                for j in (i + 1)..moved.len() {
                    out.push(crate::hypergeom::dist_halfplane(&moved[i], &moved[j]));
                }
            }
            out
        };
        let d0 = dist_at(0.0);
        for t in [0.5, 1.3, 2.0] {
            for (d, d0) in dist_at(t).iter().zip(&d0) {
                assert_abs_diff_eq!(d, d0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn region_map_sees_both_signs_and_solvable_cells() {
        let map = f2_region(40, 40).unwrap();
        assert_eq!(map.cells.len(), 1600);
        assert!(map.has_negative_f2());
        assert!(map.has_positive_f2());
        assert!(map.cells.iter().any(|c| c.omega_sq.is_some()));
        // boundary-adjacent cells above the threshold angle are negative
        let a1 = alpha1();
        for i in 0..40 {
            let cell = &map.cells[i * 40 + 39];
            if cell.alpha > a1 {
                assert!(cell.f2 < 0.0, "cell ({}, {}) has f2 = {}", cell.alpha, cell.beta, cell.f2);
            }
        }
    }

    #[test]
    fn region_map_is_deterministic() {
        let a = f2_region(12, 9).unwrap();
        let b = f2_region(12, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn region_map_rejects_degenerate_grids() {
        assert!(f2_region(1, 10).is_err());
        assert!(f2_region(10, 1).is_err());
    }
}
