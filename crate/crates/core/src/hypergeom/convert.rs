//! Isometric conversion between the hyperboloid and the upper half plane.
//!
//! Points travel through the Poincare disk:
//!
//! * hyperboloid to disk: `zeta = (x + i y) / (1 + z)`;
//! * disk to half plane: `w = i (1 + zeta) / (1 - zeta)`.
//!
//! The apex `(0, 0, 1)` maps to `i`, and the geodesic `{x = 0}` of the sheet
//! maps onto the unit half circle `|w| = 1`. The composite maps are mutually
//! inverse bijections and preserve hyperbolic distance.
//!
//! Velocities are pushed forward with Richardson-extrapolated central
//! differences of the conversion along the velocity direction; no hand-derived
//! Jacobians are involved.

use num_complex::Complex64;

use super::{HalfPlanePoint, HyperboloidPoint, MinkowskiVec, TangentVec};
use crate::error::GeomError;

/// Coordinate magnitude beyond which the differentiation step underflows.
pub const PUSHFORWARD_MAX_COORD: f64 = 1e8;

/// Base relative step for the central differences.
const PUSHFORWARD_STEP: f64 = 1e-5;

fn disk_from_hyperboloid(v: &MinkowskiVec) -> Complex64 {
    Complex64::new(v.x, v.y) / (1.0 + v.z)
}

fn halfplane_from_disk(zeta: Complex64) -> Complex64 {
    Complex64::i() * (1.0 + zeta) / (1.0 - zeta)
}

fn disk_from_halfplane(w: Complex64) -> Complex64 {
    (w - Complex64::i()) / (w + Complex64::i())
}

fn hyperboloid_from_disk(zeta: Complex64) -> MinkowskiVec {
    let denom = 1.0 - zeta.norm_sqr();
    MinkowskiVec::new(
        2.0 * zeta.re / denom,
        2.0 * zeta.im / denom,
        (1.0 + zeta.norm_sqr()) / denom,
    )
}

/// Raw coordinate form of the sheet-to-half-plane map, defined on a
/// neighbourhood of the sheet in the ambient space.
fn halfplane_coords_from_ambient(v: &MinkowskiVec) -> Complex64 {
    halfplane_from_disk(disk_from_hyperboloid(v))
}

/// Raw coordinate form of the half-plane-to-sheet map, defined for any
/// complex argument off the singular point `-i`.
fn ambient_from_halfplane_coords(w: Complex64) -> MinkowskiVec {
    hyperboloid_from_disk(disk_from_halfplane(w))
}

/// Converts a point of the upper sheet to the half plane.
pub fn hyperboloid_to_halfplane(p: &HyperboloidPoint) -> HalfPlanePoint {
    let w = halfplane_coords_from_ambient(&p.coords());
    debug_assert!(w.im > 0.0, "conversion left the upper half plane");
    HalfPlanePoint::new(w.re, w.im)
        .expect("the model map sends the upper sheet into the upper half plane")
}

/// Converts a half-plane point to the upper sheet.
pub fn halfplane_to_hyperboloid(w: &HalfPlanePoint) -> HyperboloidPoint {
    let v = ambient_from_halfplane_coords(w.to_complex());
    debug_assert!(v.z >= 1.0 - 1e-12, "conversion left the upper sheet");
    HyperboloidPoint::new_unchecked(v)
}

/// Richardson-extrapolated directional derivative of `f` along `dir` at 0.
fn richardson_complex(f: impl Fn(f64) -> Complex64, h: f64) -> Complex64 {
    let d = |step: f64| (f(step) - f(-step)) / (2.0 * step);
    (d(h / 2.0) * 4.0 - d(h)) / 3.0
}

fn richardson_vec(f: impl Fn(f64) -> MinkowskiVec, h: f64) -> MinkowskiVec {
    let d = |step: f64| (f(step).sub(&f(-step))).scale(1.0 / (2.0 * step));
    (d(h / 2.0).scale(4.0).sub(&d(h))).scale(1.0 / 3.0)
}

/// Pushes a tangent vector of the sheet forward to a half-plane velocity.
pub fn pushforward_to_halfplane(v: &TangentVec) -> Result<Complex64, GeomError> {
    let p = v.base.coords();
    if p.max_abs() > PUSHFORWARD_MAX_COORD {
        return Err(GeomError::StepSizeUnderflow { magnitude: p.max_abs() });
    }
    if v.v == MinkowskiVec::ZERO {
        return Ok(Complex64::new(0.0, 0.0));
    }
    // displacement |h v| stays at the base scale whatever |v| is
    let h = PUSHFORWARD_STEP * p.max_abs().max(1.0) / v.v.max_abs();
    Ok(richardson_complex(
        |s| halfplane_coords_from_ambient(&p.add(&v.v.scale(s))),
        h,
    ))
}

/// Pushes a half-plane velocity forward to a tangent vector of the sheet.
///
/// The numerical derivative is tangent to within its truncation error; the
/// residual normal component is projected out so the returned value satisfies
/// the tangency invariant exactly.
pub fn pushforward_to_hyperboloid(
    w: &HalfPlanePoint,
    wdot: Complex64,
) -> Result<TangentVec, GeomError> {
    let w0 = w.to_complex();
    if w0.norm() > PUSHFORWARD_MAX_COORD {
        return Err(GeomError::StepSizeUnderflow { magnitude: w0.norm() });
    }
    let base = halfplane_to_hyperboloid(w);
    if wdot == Complex64::new(0.0, 0.0) {
        return Ok(TangentVec::new_unchecked(base, MinkowskiVec::ZERO));
    }
    let h = PUSHFORWARD_STEP * w0.norm().max(1.0) / wdot.norm();
    let raw = richardson_vec(|s| ambient_from_halfplane_coords(w0 + wdot * s), h);
    Ok(TangentVec::new_unchecked(base, base.project_tangent(&raw)))
}
