//! Fixed-step RK4 integration with post-step manifold projection.
//!
//! Each classical step on the raw coordinates `(q, q')` is followed by a
//! repair: positions renormalize to the sheet, `q <- q / sqrt(-q ⊙ q)`, and
//! velocities re-orthogonalize, `v <- v + (q ⊙ v) q`. The repair displacement
//! is recorded in the trajectory diagnostics, along with energy, constraint,
//! and first-integral drifts.

use super::{
    accel_l2_raw, first_integrals, total_energy_l2, DynamicsError, HyperboloidPoint,
    MinkowskiVec, StateL2,
};
use crate::hypergeom::minkowski_dot;

/// Drift and repair statistics accumulated over an integration.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TrajectoryDiagnostics {
    /// Largest `|E(t) - E(0)|` over recorded states.
    pub energy_drift: f64,
    /// Largest `|q ⊙ q + 1|` over bodies and recorded states (post repair).
    pub max_constraint: f64,
    /// Largest drift of `(L_xy, L_xz, L_yz)` from their initial values.
    pub first_integral_drift: [f64; 3],
    /// Largest coordinate displacement applied by the post-step repair.
    pub max_repair_displacement: f64,
}

/// A time-ordered record of integrated states.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<StateL2>,
    pub diagnostics: TrajectoryDiagnostics,
}

/// Result of [`integrate`]: the trajectory, plus the collision that stopped
/// it early, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrationOutcome {
    pub trajectory: Trajectory,
    /// `Some((i, j, t))` if bodies i and j collided near time t; the
    /// trajectory then holds every state before the failed step.
    pub collision: Option<(usize, usize, f64)>,
}

struct RawState {
    q: Vec<MinkowskiVec>,
    v: Vec<MinkowskiVec>,
}

impl RawState {
    fn from_state(state: &StateL2) -> RawState {
        RawState {
            q: state.positions.iter().map(|p| p.coords()).collect(),
            v: state.velocities.clone(),
        }
    }

    fn shifted(&self, dq: &[MinkowskiVec], dv: &[MinkowskiVec], h: f64) -> RawState {
        RawState {
            q: self.q.iter().zip(dq).map(|(q, d)| q.add(&d.scale(h))).collect(),
            v: self.v.iter().zip(dv).map(|(v, d)| v.add(&d.scale(h))).collect(),
        }
    }
}

/// One classical RK4 step of size `h` followed by manifold repair.
///
/// Returns the new state and the largest repair displacement.
pub fn step_rk4(state: &StateL2, h: f64) -> Result<(StateL2, f64), DynamicsError> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(DynamicsError::InvalidStep { what: format!("h = {h}") });
    }
    let bodies = &state.bodies;
    let s0 = RawState::from_state(state);

    let a1 = accel_l2_raw(bodies, &s0.q, &s0.v)?;
    let k1 = (&s0.v, &a1);

    let s1 = s0.shifted(k1.0, k1.1, h / 2.0);
    let a2 = accel_l2_raw(bodies, &s1.q, &s1.v)?;
    let k2 = (&s1.v, &a2);

    let s2 = s0.shifted(k2.0, k2.1, h / 2.0);
    let a3 = accel_l2_raw(bodies, &s2.q, &s2.v)?;
    let k3 = (&s2.v, &a3);

    let s3 = s0.shifted(k3.0, k3.1, h);
    let a4 = accel_l2_raw(bodies, &s3.q, &s3.v)?;
    let k4 = (&s3.v, &a4);

    let n = state.len();
    let mut positions = Vec::with_capacity(n);
    let mut velocities = Vec::with_capacity(n);
    let mut max_repair = 0.0f64;
    for i in 0..n {
        let dq = k1.0[i]
            .add(&k2.0[i].scale(2.0))
            .add(&k3.0[i].scale(2.0))
            .add(&k4.0[i])
            .scale(h / 6.0);
        let dv = k1.1[i]
            .add(&k2.1[i].scale(2.0))
            .add(&k3.1[i].scale(2.0))
            .add(&k4.1[i])
            .scale(h / 6.0);
        let q_raw = s0.q[i].add(&dq);
        let v_raw = s0.v[i].add(&dv);

        // repair: renormalize onto the sheet, then remove the normal part of
        // the velocity
        let gram = minkowski_dot(&q_raw, &q_raw);
        if !(gram < 0.0) || !q_raw.is_finite() || !v_raw.is_finite() {
            return Err(DynamicsError::Diverged { time: h });
        }
        let q_fixed = q_raw.scale(1.0 / (-gram).sqrt());
        let qv = minkowski_dot(&q_fixed, &v_raw);
        let v_fixed = v_raw.add(&q_fixed.scale(qv));
        max_repair = max_repair
            .max(q_fixed.sub(&q_raw).max_abs())
            .max(v_fixed.sub(&v_raw).max_abs());

        positions.push(HyperboloidPoint::new_unchecked(q_fixed));
        velocities.push(v_fixed);
    }
    Ok((StateL2::new_unchecked(bodies.clone(), positions, velocities), max_repair))
}

/// Integrates a state to `t_end` with fixed step `h`, recording every step.
///
/// A collision aborts the run; the partial trajectory is retained in the
/// outcome.
pub fn integrate(state: &StateL2, t_end: f64, h: f64) -> Result<IntegrationOutcome, DynamicsError> {
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(DynamicsError::InvalidStep { what: format!("t_end = {t_end}") });
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(DynamicsError::InvalidStep { what: format!("h = {h}") });
    }

    let e0 = total_energy_l2(state)?;
    let l0 = first_integrals(state);

    let mut times = vec![0.0];
    let mut states = vec![state.clone()];
    let mut diag = TrajectoryDiagnostics::default();
    let record = |s: &StateL2, diag: &mut TrajectoryDiagnostics| {
        if let Ok(e) = total_energy_l2(s) {
            diag.energy_drift = diag.energy_drift.max((e - e0).abs());
        }
        let l = first_integrals(s);
        for k in 0..3 {
            diag.first_integral_drift[k] = diag.first_integral_drift[k].max((l[k] - l0[k]).abs());
        }
        for p in &s.positions {
            let gram = minkowski_dot(&p.coords(), &p.coords());
            diag.max_constraint = diag.max_constraint.max((gram + 1.0).abs());
        }
    };
    record(state, &mut diag);

    let mut current = state.clone();
    let mut t = 0.0f64;
    let mut collision = None;
    while t < t_end - 1e-12 {
        let step = h.min(t_end - t);
        match step_rk4(&current, step) {
            Ok((next, repair)) => {
                diag.max_repair_displacement = diag.max_repair_displacement.max(repair);
                t += step;
                record(&next, &mut diag);
                times.push(t);
                states.push(next.clone());
                current = next;
            }
            Err(DynamicsError::Collision { i, j }) => {
                collision = Some((i, j, t));
                break;
            }
            Err(DynamicsError::Diverged { .. }) => {
                return Err(DynamicsError::Diverged { time: t });
            }
            Err(e) => return Err(e),
        }
    }

    Ok(IntegrationOutcome {
        trajectory: Trajectory { times, states, diagnostics: diag },
        collision,
    })
}
