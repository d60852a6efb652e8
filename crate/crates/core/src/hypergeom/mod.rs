//! Geometry kernel for the hyperbolic plane at curvature -1.
//!
//! Two isometric models are implemented:
//!
//! * the hyperboloid (Weierstrass) model: the upper sheet of
//!   `x^2 + y^2 - z^2 = -1` in Minkowski 3-space, with the bilinear form
//!   `a ⊙ b = a_x b_x + a_y b_y - a_z b_z` and distance
//!   `d(p, q) = arccosh(-p ⊙ q)`;
//! * the Poincare upper half plane: `{ w ∈ ℂ : Im w > 0 }` with the metric
//!   `(dx^2 + dy^2) / y^2`, acted on by real Moebius transformations of
//!   determinant 1.
//!
//! [`convert`] carries points and velocities between the two models through
//! the Poincare disk; the composite maps are mutually inverse isometries.
//!
//! Everything here is a pure function of immutable values and is safe to use
//! from any number of threads.

pub mod convert;
pub mod halfplane;
pub mod lorentz;

pub use convert::{
    halfplane_to_hyperboloid, hyperboloid_to_halfplane, pushforward_to_halfplane,
    pushforward_to_hyperboloid,
};
pub use halfplane::{dist_halfplane, exp_generator, moebius_apply, HalfPlanePoint,
    MoebiusTransform, Sl2Generator};
pub use lorentz::{boost_matrix, boost_x_matrix, elliptic_matrix, parabolic_matrix,
    LorentzTransform};

use crate::error::GeomError;

/// Tolerance for the algebraic invariants of geometric types (on-sheet gram,
/// tangency, determinant one).
pub const INVARIANT_TOL: f64 = 1e-12;

/// A vector of Minkowski 3-space with signature (+, +, -).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkowskiVec {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl MinkowskiVec {
    pub const ZERO: MinkowskiVec = MinkowskiVec { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        MinkowskiVec { x, y, z }
    }

    /// The Minkowski product `self ⊙ other`.
    pub fn dot(&self, other: &MinkowskiVec) -> f64 {
        minkowski_dot(self, other)
    }

    /// Largest coordinate magnitude. Used to scale differentiation steps.
    pub fn max_abs(&self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn scale(&self, s: f64) -> MinkowskiVec {
        MinkowskiVec::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn add(&self, other: &MinkowskiVec) -> MinkowskiVec {
        MinkowskiVec::new(self.x + other.x, self.y + other.y, self.z + other.z)
    }

    pub fn sub(&self, other: &MinkowskiVec) -> MinkowskiVec {
        MinkowskiVec::new(self.x - other.x, self.y - other.y, self.z - other.z)
    }
}

impl std::ops::Add for MinkowskiVec {
    type Output = MinkowskiVec;
    fn add(self, rhs: MinkowskiVec) -> MinkowskiVec {
        MinkowskiVec::add(&self, &rhs)
    }
}

impl std::ops::Sub for MinkowskiVec {
    type Output = MinkowskiVec;
    fn sub(self, rhs: MinkowskiVec) -> MinkowskiVec {
        MinkowskiVec::sub(&self, &rhs)
    }
}

impl std::ops::Mul<f64> for MinkowskiVec {
    type Output = MinkowskiVec;
    fn mul(self, rhs: f64) -> MinkowskiVec {
        self.scale(rhs)
    }
}

impl std::ops::Neg for MinkowskiVec {
    type Output = MinkowskiVec;
    fn neg(self) -> MinkowskiVec {
        self.scale(-1.0)
    }
}

/// The Minkowski product `a_x b_x + a_y b_y - a_z b_z`.
pub fn minkowski_dot(a: &MinkowskiVec, b: &MinkowskiVec) -> f64 {
    a.x * b.x + a.y * b.y - a.z * b.z
}

/// A point on the upper sheet of the unit hyperboloid: `v ⊙ v = -1`, `z >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperboloidPoint {
    v: MinkowskiVec,
}

impl HyperboloidPoint {
    /// The apex `(0, 0, 1)`.
    pub const APEX: HyperboloidPoint =
        HyperboloidPoint { v: MinkowskiVec { x: 0.0, y: 0.0, z: 1.0 } };

    /// Validates the on-sheet invariants before wrapping.
    pub fn new(v: MinkowskiVec) -> Result<Self, GeomError> {
        let gram = minkowski_dot(&v, &v);
        if !v.is_finite() || (gram + 1.0).abs() > INVARIANT_TOL || v.z <= 0.0 {
            return Err(GeomError::NotOnHyperboloid { gram, z: v.z });
        }
        Ok(HyperboloidPoint { v })
    }

    /// Lifts planar coordinates onto the sheet: `z = sqrt(1 + x^2 + y^2)`.
    pub fn lift(x: f64, y: f64) -> Self {
        HyperboloidPoint { v: MinkowskiVec::new(x, y, (1.0 + x * x + y * y).sqrt()) }
    }

    /// Wraps coordinates that are known to satisfy the invariants, e.g. the
    /// output of an exact construction. Debug builds still check.
    pub(crate) fn new_unchecked(v: MinkowskiVec) -> Self {
        // the gram check itself cancels to eps * |v|^2, so scale the window
        debug_assert!(
            (minkowski_dot(&v, &v) + 1.0).abs() < 1e-9 * (v.z * v.z).max(1.0) && v.z > 0.0,
            "unchecked hyperboloid point violates the sheet invariant"
        );
        HyperboloidPoint { v }
    }

    pub fn coords(&self) -> MinkowskiVec {
        self.v
    }

    pub fn x(&self) -> f64 {
        self.v.x
    }

    pub fn y(&self) -> f64 {
        self.v.y
    }

    pub fn z(&self) -> f64 {
        self.v.z
    }

    /// `self ⊙ other` as raw vectors.
    pub fn dot(&self, other: &HyperboloidPoint) -> f64 {
        minkowski_dot(&self.v, &other.v)
    }

    /// Projects an ambient vector onto the tangent space at this point:
    /// `v + (q ⊙ v) q`.
    pub fn project_tangent(&self, v: &MinkowskiVec) -> MinkowskiVec {
        let qv = minkowski_dot(&self.v, v);
        v.add(&self.v.scale(qv))
    }

    pub fn distance(&self, other: &HyperboloidPoint) -> Result<f64, GeomError> {
        dist_hyperboloid(self, other)
    }
}

/// A tangent vector of the hyperboloid: `base ⊙ v = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVec {
    pub base: HyperboloidPoint,
    pub v: MinkowskiVec,
}

impl TangentVec {
    /// Validates Minkowski-orthogonality to the base point.
    pub fn new(base: HyperboloidPoint, v: MinkowskiVec) -> Result<Self, GeomError> {
        let dot = minkowski_dot(&base.coords(), &v);
        if !v.is_finite() || dot.abs() > INVARIANT_TOL * v.max_abs().max(1.0) {
            return Err(GeomError::NotTangent { dot });
        }
        Ok(TangentVec { base, v })
    }

    pub(crate) fn new_unchecked(base: HyperboloidPoint, v: MinkowskiVec) -> Self {
        TangentVec { base, v }
    }

    /// Squared hyperbolic speed, `v ⊙ v`. Nonnegative for tangent vectors.
    pub fn speed_sq(&self) -> f64 {
        minkowski_dot(&self.v, &self.v)
    }
}

/// Hyperbolic distance on the upper sheet, `arccosh(-p ⊙ q)`.
///
/// Rounding can push `-p ⊙ q` slightly below 1 for coincident points; values
/// within `1e-12` of 1 are clamped, anything further out is rejected.
pub fn dist_hyperboloid(p: &HyperboloidPoint, q: &HyperboloidPoint) -> Result<f64, GeomError> {
    let mut c = -p.dot(q);
    if c < 1.0 {
        if c < 1.0 - INVARIANT_TOL {
            return Err(GeomError::InvalidDistanceArgument { arg: c });
        }
        c = 1.0;
    }
    Ok(c.acosh())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn geometry_types_are_thread_safe() {
        assert_send_sync::<MinkowskiVec>();
        assert_send_sync::<HyperboloidPoint>();
        assert_send_sync::<TangentVec>();
        assert_send_sync::<LorentzTransform>();
        assert_send_sync::<MoebiusTransform>();
        assert_send_sync::<HalfPlanePoint>();
    }

    #[test]
    fn dot_of_apex_with_itself_is_minus_one() {
        let a = MinkowskiVec::new(0.0, 0.0, 1.0);
        assert_eq!(minkowski_dot(&a, &a), -1.0);
    }

    #[test]
    fn dot_of_orthogonal_spacelike_basis_is_zero() {
        let a = MinkowskiVec::new(1.0, 0.0, 0.0);
        let b = MinkowskiVec::new(0.0, 1.0, 0.0);
        assert_eq!(minkowski_dot(&a, &b), 0.0);
    }

    #[test]
    fn dot_against_apex_reads_off_minus_z() {
        let s = 1.0_f64;
        let a = MinkowskiVec::new(0.0, s.sinh(), s.cosh());
        let apex = MinkowskiVec::new(0.0, 0.0, 1.0);
        assert_abs_diff_eq!(minkowski_dot(&a, &apex), -s.cosh(), epsilon = 1e-15);
    }

    #[test]
    fn distance_to_self_is_zero() {
        assert_eq!(
            dist_hyperboloid(&HyperboloidPoint::APEX, &HyperboloidPoint::APEX).unwrap(),
            0.0
        );
        // for lifted points the product sits a few ulp from 1, and the
        // arccosh form resolves nothing below ~1e-8 there
        let p = HyperboloidPoint::lift(0.3, -1.2);
        assert!(dist_hyperboloid(&p, &p).unwrap() <= 1e-7);
    }

    #[test]
    fn distance_along_boost_geodesic_is_arclength() {
        for s in [-2.0, -0.5, 0.1, 1.7] {
            let p = HyperboloidPoint::APEX;
            let q = HyperboloidPoint::new(MinkowskiVec::new(0.0, f64::sinh(s), f64::cosh(s)))
                .unwrap();
            assert_abs_diff_eq!(dist_hyperboloid(&p, &q).unwrap(), s.abs(), epsilon = 1e-12);
        }
    }

    #[test]
    fn distance_rejects_points_off_the_sheet() {
        // a point drifted slightly inside the cone, beyond the clamp window
        let z = (1.0f64 - 1e-10).sqrt();
        let bad = HyperboloidPoint::new_unchecked(MinkowskiVec::new(0.0, 0.0, z));
        assert!(matches!(
            dist_hyperboloid(&bad, &bad),
            Err(GeomError::InvalidDistanceArgument { .. })
        ));
    }

    #[test]
    fn constructor_rejects_lower_sheet_and_bad_gram() {
        assert!(HyperboloidPoint::new(MinkowskiVec::new(0.0, 0.0, -1.0)).is_err());
        assert!(HyperboloidPoint::new(MinkowskiVec::new(0.0, 0.0, 1.1)).is_err());
    }

    #[test]
    fn tangent_constructor_rejects_non_orthogonal_vectors() {
        let p = HyperboloidPoint::APEX;
        assert!(TangentVec::new(p, MinkowskiVec::new(0.0, 0.0, 1.0)).is_err());
        assert!(TangentVec::new(p, MinkowskiVec::new(1.0, 2.0, 0.0)).is_ok());
    }

    proptest! {
        #[test]
        fn dot_is_symmetric_and_bilinear(
            ax in -10.0..10.0f64, ay in -10.0..10.0f64, az in -10.0..10.0f64,
            bx in -10.0..10.0f64, by in -10.0..10.0f64, bz in -10.0..10.0f64,
            s in -3.0..3.0f64,
        ) {
            let a = MinkowskiVec::new(ax, ay, az);
            let b = MinkowskiVec::new(bx, by, bz);
            prop_assert!((minkowski_dot(&a, &b) - minkowski_dot(&b, &a)).abs() < 1e-12);
            let lhs = minkowski_dot(&a.scale(s), &b);
            let rhs = s * minkowski_dot(&a, &b);
            prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + rhs.abs()));
        }

        #[test]
        fn triangle_inequality_holds(
            ax in -3.0..3.0f64, ay in -3.0..3.0f64,
            bx in -3.0..3.0f64, by in -3.0..3.0f64,
            cx in -3.0..3.0f64, cy in -3.0..3.0f64,
        ) {
            let a = HyperboloidPoint::lift(ax, ay);
            let b = HyperboloidPoint::lift(bx, by);
            let c = HyperboloidPoint::lift(cx, cy);
            let ab = dist_hyperboloid(&a, &b).unwrap();
            let bc = dist_hyperboloid(&b, &c).unwrap();
            let ac = dist_hyperboloid(&a, &c).unwrap();
            prop_assert!(ac <= ab + bc + 1e-10);
        }

        #[test]
        fn distance_is_positive_for_distinct_points(
            ax in -3.0..3.0f64, ay in -3.0..3.0f64,
            dx in 1e-3..1.0f64, dy in 1e-3..1.0f64,
        ) {
            let a = HyperboloidPoint::lift(ax, ay);
            let b = HyperboloidPoint::lift(ax + dx, ay + dy);
            prop_assert!(dist_hyperboloid(&a, &b).unwrap() > 0.0);
        }
    }
}
