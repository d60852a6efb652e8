//! Isometries of the hyperboloid model.
//!
//! The proper orthochronous Lorentz group of the form diag(1, 1, -1) acts on
//! the upper sheet. Every one-parameter subgroup is conjugate to one of three
//! canonical families: a rotation about the z-axis (elliptic), a boost in the
//! y-z plane (hyperbolic), and a null translation (parabolic).

use super::{minkowski_dot, HyperboloidPoint, MinkowskiVec, INVARIANT_TOL};
use crate::error::GeomError;

/// A proper orthochronous Lorentz transform: `m^T J m = J` with
/// `J = diag(1, 1, -1)`, `det m = 1`, and `m[2][2] > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzTransform {
    m: [[f64; 3]; 3],
}

impl LorentzTransform {
    pub const IDENTITY: LorentzTransform = LorentzTransform {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    /// Validates the defining relations before wrapping.
    pub fn new(m: [[f64; 3]; 3]) -> Result<Self, GeomError> {
        let t = LorentzTransform { m };
        // columns of m, with J-weights (+, +, -)
        let cols: Vec<MinkowskiVec> =
            (0..3).map(|j| MinkowskiVec::new(m[0][j], m[1][j], m[2][j])).collect();
        let expect = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]];
        for i in 0..3 {
            for j in 0..3 {
                let g = minkowski_dot(&cols[i], &cols[j]);
                if (g - expect[i][j]).abs() > INVARIANT_TOL * t.norm_scale() {
                    return Err(GeomError::NotLorentz {
                        reason: format!("gram[{i}][{j}] = {g}, expected {}", expect[i][j]),
                    });
                }
            }
        }
        let det = t.det();
        if (det - 1.0).abs() > INVARIANT_TOL * t.norm_scale() {
            return Err(GeomError::NotLorentz { reason: format!("det = {det}") });
        }
        if m[2][2] <= 0.0 {
            return Err(GeomError::NotLorentz {
                reason: format!("m[2][2] = {} <= 0 swaps the sheets", m[2][2]),
            });
        }
        Ok(t)
    }

    fn new_unchecked(m: [[f64; 3]; 3]) -> Self {
        LorentzTransform { m }
    }

    fn norm_scale(&self) -> f64 {
        let mut s = 1.0f64;
        for row in &self.m {
            for &v in row {
                s = s.max(v.abs());
            }
        }
        s * s
    }

    pub fn matrix(&self) -> &[[f64; 3]; 3] {
        &self.m
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Applies the transform to an ambient vector.
    pub fn apply_vec(&self, v: &MinkowskiVec) -> MinkowskiVec {
        let m = &self.m;
        MinkowskiVec::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    /// Applies the transform to a point of the upper sheet.
    pub fn apply(&self, p: &HyperboloidPoint) -> HyperboloidPoint {
        HyperboloidPoint::new_unchecked(self.apply_vec(&p.coords()))
    }

    /// Group composition, `self` after `other`.
    pub fn compose(&self, other: &LorentzTransform) -> LorentzTransform {
        let a = &self.m;
        let b = &other.m;
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
            }
        }
        LorentzTransform::new_unchecked(m)
    }

    /// Inverse via the form: `m^{-1} = J m^T J`. Exact for Lorentz matrices.
    pub fn inverse(&self) -> LorentzTransform {
        let m = &self.m;
        LorentzTransform::new_unchecked([
            [m[0][0], m[1][0], -m[2][0]],
            [m[0][1], m[1][1], -m[2][1]],
            [-m[0][2], -m[1][2], m[2][2]],
        ])
    }
}

impl std::ops::Mul for LorentzTransform {
    type Output = LorentzTransform;
    fn mul(self, rhs: LorentzTransform) -> LorentzTransform {
        self.compose(&rhs)
    }
}

/// Rotation about the z-axis by `theta`. Fixes the apex.
pub fn elliptic_matrix(theta: f64) -> LorentzTransform {
    let (s, c) = theta.sin_cos();
    LorentzTransform { m: [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]] }
}

/// Boost in the y-z plane by rapidity `s`. Translates along the geodesic
/// `{x = 0}` of the sheet.
pub fn boost_matrix(s: f64) -> LorentzTransform {
    let (sh, ch) = (s.sinh(), s.cosh());
    LorentzTransform { m: [[1.0, 0.0, 0.0], [0.0, ch, sh], [0.0, sh, ch]] }
}

/// Boost in the x-z plane by rapidity `s`. Translates along the geodesic
/// `{y = 0}`, which the model conversion sends to the imaginary axis of the
/// half plane.
pub fn boost_x_matrix(s: f64) -> LorentzTransform {
    let (sh, ch) = (s.sinh(), s.cosh());
    LorentzTransform { m: [[ch, 0.0, sh], [0.0, 1.0, 0.0], [sh, 0.0, ch]] }
}

/// Parabolic (null) translation with parameter `t`.
pub fn parabolic_matrix(t: f64) -> LorentzTransform {
    let t2 = t * t / 2.0;
    LorentzTransform {
        m: [[1.0, -t, t], [t, 1.0 - t2, t2], [t, -t2, 1.0 + t2]],
    }
}
