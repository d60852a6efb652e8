//! The Poincare upper half plane and its Moebius isometries.

use num_complex::Complex64;

use crate::error::GeomError;
use super::INVARIANT_TOL;

/// A point `w = re + i im` with `im > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint {
    re: f64,
    im: f64,
}

impl HalfPlanePoint {
    /// The point `i`, image of the hyperboloid apex under the model map.
    pub const I: HalfPlanePoint = HalfPlanePoint { re: 0.0, im: 1.0 };

    pub fn new(re: f64, im: f64) -> Result<Self, GeomError> {
        if !(re.is_finite() && im.is_finite() && im > 0.0) {
            return Err(GeomError::NotInUpperHalfPlane { im });
        }
        Ok(HalfPlanePoint { re, im })
    }

    pub fn from_complex(w: Complex64) -> Result<Self, GeomError> {
        HalfPlanePoint::new(w.re, w.im)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn distance(&self, other: &HalfPlanePoint) -> f64 {
        dist_halfplane(self, other)
    }
}

/// Hyperbolic distance in the half plane.
///
/// Evaluated as `2 asinh(|w1 - w2| / (2 sqrt(y1 y2)))`, which is the identity
/// `cosh d = 1 + |w1 - w2|^2 / (2 y1 y2)` in a cancellation-free form.
pub fn dist_halfplane(w1: &HalfPlanePoint, w2: &HalfPlanePoint) -> f64 {
    let dx = w1.re - w2.re;
    let dy = w1.im - w2.im;
    let chord = (dx * dx + dy * dy).sqrt();
    2.0 * (chord / (2.0 * (w1.im * w2.im).sqrt())).asinh()
}

/// A real 2x2 matrix of determinant 1 acting on the half plane by
/// `w -> (a w + b) / (c w + d)`. `g` and `-g` act identically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusTransform {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl MoebiusTransform {
    pub const IDENTITY: MoebiusTransform = MoebiusTransform { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, GeomError> {
        let det = a * d - b * c;
        let scale = a.abs().max(b.abs()).max(c.abs()).max(d.abs()).max(1.0);
        if !det.is_finite() || (det - 1.0).abs() > INVARIANT_TOL * scale * scale {
            return Err(GeomError::NotUnimodular { det });
        }
        Ok(MoebiusTransform { a, b, c, d })
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, w: &HalfPlanePoint) -> HalfPlanePoint {
        moebius_apply(self, w)
    }

    /// Matrix product, `self` after `other`.
    pub fn compose(&self, other: &MoebiusTransform) -> MoebiusTransform {
        MoebiusTransform {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> MoebiusTransform {
        MoebiusTransform { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }
}

impl std::ops::Mul for MoebiusTransform {
    type Output = MoebiusTransform;
    fn mul(self, rhs: MoebiusTransform) -> MoebiusTransform {
        self.compose(&rhs)
    }
}

/// Moebius action on the half plane. With real entries and determinant 1 the
/// image has `Im w' = Im w / |c w + d|^2 > 0`.
pub fn moebius_apply(g: &MoebiusTransform, w: &HalfPlanePoint) -> HalfPlanePoint {
    let z = w.to_complex();
    let denom = g.c * z + g.d;
    let image = (g.a * z + g.b) / denom;
    HalfPlanePoint::new(image.re, image.im)
        .expect("a determinant-one real Moebius transform preserves the upper half plane")
}

/// Conjugacy classes of one-parameter isometry subgroups, with canonical
/// traceless generators:
///
/// * elliptic, rate `omega`: rotation-like, fixes one interior point;
/// * hyperbolic, rate `omega`: translation along a geodesic, the canonical
///   representative acts as `w -> e^{omega t} w`;
/// * parabolic (either sign): horocyclic, acts as `w -> w +- t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sl2Generator {
    Elliptic { omega: f64 },
    Hyperbolic { omega: f64 },
    ParabolicPlus,
    ParabolicMinus,
}

impl Sl2Generator {
    pub fn elliptic(omega: f64) -> Result<Self, GeomError> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(GeomError::NonPositiveRate { omega });
        }
        Ok(Sl2Generator::Elliptic { omega })
    }

    pub fn hyperbolic(omega: f64) -> Result<Self, GeomError> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(GeomError::NonPositiveRate { omega });
        }
        Ok(Sl2Generator::Hyperbolic { omega })
    }
}

/// Closed-form exponential of the canonical generators at time `t`.
pub fn exp_generator(g: Sl2Generator, t: f64) -> MoebiusTransform {
    match g {
        Sl2Generator::Elliptic { omega } => {
            let half = omega * t / 2.0;
            let (s, c) = half.sin_cos();
            MoebiusTransform { a: c, b: -s, c: s, d: c }
        }
        Sl2Generator::Hyperbolic { omega } => {
            let half = (omega * t / 2.0).exp();
            MoebiusTransform { a: half, b: 0.0, c: 0.0, d: 1.0 / half }
        }
        Sl2Generator::ParabolicPlus => MoebiusTransform { a: 1.0, b: t, c: 0.0, d: 1.0 },
        Sl2Generator::ParabolicMinus => MoebiusTransform { a: 1.0, b: -t, c: 0.0, d: 1.0 },
    }
}
