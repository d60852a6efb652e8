//! Regular n-gon configurations under boost motion, and the numerical
//! certificate that they are never relative equilibria for equal masses.
//!
//! The configuration places n bodies on a hyperbolic circle about the apex:
//!
//! ```text
//! q_i(0) = (-r sin(2 pi (i-1)/n), r cos(2 pi (i-1)/n), z),    z = sqrt(1 + r^2),
//! ```
//!
//! and moves it with the boost `B(omega t)` in the y-z plane. Substituting
//! the orbit into the z-component of body 1's equation of motion leaves the
//! balance sum
//!
//! ```text
//! S = sum_{j >= 2} m_j [ z_j + (q_1 ⊙ q_j) z_1 ] / [ -1 + (q_1 ⊙ q_j)^2 ]^{3/2},
//! ```
//!
//! which must vanish on a relative equilibrium. Every bracket term satisfies
//! `term_j < z_j - z_1 <= 0` for `omega t >= 0` (strictly negative for
//! `omega t > 0`), so S is strictly negative and the balance never closes.
//! The scan evaluates S over parameter grids and reports the worst margin.

use crate::error::ReleqError;
use crate::hypergeom::{boost_matrix, HyperboloidPoint, MinkowskiVec};

use super::residual::{full_re_residual_l2, OrbitFrame, ResidualReport};
use super::zsum_from_frame;

/// Parameters of a regular n-gon boost orbit: body count, circumradius
/// parameter `r > 0`, and boost rate `omega != 0`. The height `z` is derived
/// as `sqrt(1 + r^2)` so that `r^2 - z^2 = -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NGonParams {
    pub n: usize,
    pub r: f64,
    pub omega: f64,
}

impl NGonParams {
    pub fn new(n: usize, r: f64, omega: f64) -> Result<Self, ReleqError> {
        if n < 2 {
            return Err(ReleqError::InvalidParams { what: format!("n = {n} < 2") });
        }
        if !(r.is_finite() && r > 0.0) {
            return Err(ReleqError::InvalidParams { what: format!("r = {r}") });
        }
        if !(omega.is_finite() && omega != 0.0) {
            return Err(ReleqError::InvalidParams { what: format!("omega = {omega}") });
        }
        Ok(NGonParams { n, r, omega })
    }

    pub fn z(&self) -> f64 {
        (1.0 + self.r * self.r).sqrt()
    }
}

/// Initial vertices of the regular n-gon at circumradius parameter `r`.
pub fn ngon_initial(n: usize, r: f64) -> Result<Vec<HyperboloidPoint>, ReleqError> {
    if n < 2 {
        return Err(ReleqError::InvalidParams { what: format!("n = {n} < 2") });
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(ReleqError::InvalidParams { what: format!("r = {r}") });
    }
    let z = (1.0 + r * r).sqrt();
    Ok((0..n)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            HyperboloidPoint::new_unchecked(MinkowskiVec::new(
                -r * theta.sin(),
                r * theta.cos(),
                z,
            ))
        })
        .collect())
}

/// The boosted n-gon orbit at time `t`, with exact time derivatives.
///
/// Positions are `B(omega t)` applied to the initial vertices; velocities are
/// `omega (0, z_i(t), y_i(t))` and accelerations `omega^2 (0, y_i(t), z_i(t))`,
/// so `z''_i = omega^2 z_i` holds by construction.
pub fn ngon_orbit(params: &NGonParams, t: f64) -> OrbitFrame {
    let initial = ngon_initial(params.n, params.r).expect("validated params");
    let g = boost_matrix(params.omega * t);
    let positions: Vec<HyperboloidPoint> = initial.iter().map(|q| g.apply(q)).collect();
    let velocities = positions
        .iter()
        .map(|q| {
            let c = q.coords();
            MinkowskiVec::new(0.0, c.z, c.y).scale(params.omega)
        })
        .collect();
    let accelerations = positions
        .iter()
        .map(|q| {
            let c = q.coords();
            MinkowskiVec::new(0.0, c.y, c.z).scale(params.omega * params.omega)
        })
        .collect();
    OrbitFrame { positions, velocities, accelerations }
}

/// Evaluates the z-balance sum S and its bracket terms on the orbit at time
/// `t`. `masses` lists all n body masses; the sum pairs body 1 against the
/// others, so `term_signs[k]` belongs to body k+2.
pub fn zsum_residual(
    params: &NGonParams,
    t: f64,
    masses: &[f64],
) -> Result<(f64, Vec<f64>), ReleqError> {
    if masses.len() != params.n {
        return Err(ReleqError::InvalidParams {
            what: format!("expected {} masses, got {}", params.n, masses.len()),
        });
    }
    let frame = ngon_orbit(params, t);
    Ok(zsum_from_frame(&frame.positions, masses))
}

/// One evaluated cell of the non-existence scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanCell {
    pub n: usize,
    pub r: f64,
    pub omega: f64,
    /// Boost phase `omega * t` for this cell.
    pub phase: f64,
    /// The balance sum; must be strictly negative.
    pub s: f64,
    /// Largest `term_j - (z_j - z_1)` over the brackets; must be strictly
    /// negative.
    pub max_term_gap: f64,
}

/// Scan result over the full grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanOutcome {
    pub cells: Vec<ScanCell>,
    /// Largest S over the grid. The certificate holds iff this is negative.
    pub max_s: f64,
    /// Smallest |S| over the grid.
    pub min_margin: f64,
    /// Largest bracket gap over the grid; negative iff every bracket
    /// inequality held strictly.
    pub max_term_gap: f64,
}

impl ScanOutcome {
    pub fn certified(&self) -> bool {
        self.max_s < 0.0 && self.max_term_gap < 0.0
    }
}

/// Evaluates the balance sum over the grid
/// `n_range x r_grid x omega_grid x phase_grid` with the given per-body
/// masses factory (equal unit masses when `None`).
///
/// Entries of `phase_grid` are the boost phases `omega t >= 0`; each cell
/// evaluates the orbit at `t = phase / omega`, which also covers negative
/// rates through negative times.
pub fn ngon_nonexistence_scan(
    n_range: std::ops::RangeInclusive<usize>,
    r_grid: &[f64],
    omega_grid: &[f64],
    phase_grid: &[f64],
    masses: Option<&dyn Fn(usize) -> Vec<f64>>,
) -> Result<ScanOutcome, ReleqError> {
    if r_grid.is_empty() || omega_grid.is_empty() || phase_grid.is_empty() {
        return Err(ReleqError::InvalidParams { what: "empty grid".into() });
    }
    for &p in phase_grid {
        if !(p.is_finite() && p >= 0.0) {
            return Err(ReleqError::InvalidParams { what: format!("phase = {p} < 0") });
        }
    }
    let mut cells = Vec::new();
    let mut max_s = f64::NEG_INFINITY;
    let mut min_margin = f64::INFINITY;
    let mut max_term_gap = f64::NEG_INFINITY;
    for n in n_range {
        let mass_vec = match masses {
            Some(f) => f(n),
            None => vec![1.0; n],
        };
        for &r in r_grid {
            for &omega in omega_grid {
                let params = NGonParams::new(n, r, omega)?;
                for &phase in phase_grid {
                    let t = phase / omega;
                    let frame = ngon_orbit(&params, t);
                    let (s, terms) = zsum_from_frame(&frame.positions, &mass_vec);
                    let z1 = frame.positions[0].z();
                    let gap = terms
                        .iter()
                        .enumerate()
                        .map(|(k, term)| term - (frame.positions[k + 1].z() - z1))
                        .fold(f64::NEG_INFINITY, f64::max);
                    max_s = max_s.max(s);
                    min_margin = min_margin.min(s.abs());
                    max_term_gap = max_term_gap.max(gap);
                    cells.push(ScanCell { n, r, omega, phase, s, max_term_gap: gap });
                }
            }
        }
    }
    Ok(ScanOutcome { cells, max_s, min_margin, max_term_gap })
}

/// Residual report for the boosted n-gon orbit: per-body defects over the
/// sampled times plus the balance sum and brackets at the first time.
pub fn ngon_residual_report(
    params: &NGonParams,
    masses: &[f64],
    times: &[f64],
) -> Result<ResidualReport, ReleqError> {
    if masses.len() != params.n {
        return Err(ReleqError::InvalidParams {
            what: format!("expected {} masses, got {}", params.n, masses.len()),
        });
    }
    let mut report =
        full_re_residual_l2(|t| ngon_orbit(params, t), masses, times).map_err(ReleqError::from)?;
    let t0 = times.first().copied().unwrap_or(0.0);
    let (s, terms) = zsum_residual(params, t0, masses)?;
    report.zsum = Some(s);
    report.term_signs = terms;
    Ok(report)
}
