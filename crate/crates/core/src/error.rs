//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by the geometry kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    /// The Minkowski gram of the point is not -1, or the point is on the
    /// lower sheet.
    #[error("point is not on the upper hyperboloid sheet (gram = {gram}, z = {z})")]
    NotOnHyperboloid { gram: f64, z: f64 },

    /// A vector that should be Minkowski-orthogonal to its base point is not.
    #[error("vector is not tangent at its base point (base dot v = {dot})")]
    NotTangent { dot: f64 },

    /// A half-plane point must have strictly positive imaginary part.
    #[error("point is not in the upper half plane (im = {im})")]
    NotInUpperHalfPlane { im: f64 },

    /// The matrix does not preserve the Minkowski form, has determinant != 1,
    /// or swaps the hyperboloid sheets.
    #[error("matrix is not a proper orthochronous Lorentz transform ({reason})")]
    NotLorentz { reason: String },

    /// A real 2x2 matrix acting on the half plane must have determinant 1.
    #[error("Moebius transform must have determinant 1 (det = {det})")]
    NotUnimodular { det: f64 },

    /// One-parameter elliptic/hyperbolic generators need a positive rate.
    #[error("generator rate must be positive (omega = {omega})")]
    NonPositiveRate { omega: f64 },

    /// The distance formula received points whose Minkowski product lies
    /// outside the valid range by more than the rounding tolerance.
    #[error("invalid distance argument: -p dot q = {arg} < 1")]
    InvalidDistanceArgument { arg: f64 },

    /// Numerical differentiation cannot pick a usable step near coordinate
    /// overflow.
    #[error("differentiation step underflow: coordinate magnitude {magnitude} too large")]
    StepSizeUnderflow { magnitude: f64 },
}

/// Errors raised by force evaluation and time integration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    /// Two bodies are closer than the collision threshold.
    #[error("collision between bodies {i} and {j} (separation below threshold)")]
    Collision { i: usize, j: usize },

    /// Parallel state arrays must have the same length.
    #[error("state arrays have mismatched lengths ({what})")]
    MismatchedLengths { what: String },

    /// Body masses must be positive and finite.
    #[error("mass must be positive and finite (got {mass})")]
    InvalidMass { mass: f64 },

    /// Step sizes and horizons must be positive.
    #[error("invalid integration parameter: {what}")]
    InvalidStep { what: String },

    /// A step left the model (non-finite coordinates or a spacelike
    /// position), typically from an unresolved close approach.
    #[error("integration step diverged near t = {time}; reduce the step size")]
    Diverged { time: f64 },

    #[error(transparent)]
    Geometry(#[from] GeomError),
}

/// Errors raised by the relative-equilibrium machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReleqError {
    /// Parameters outside their admissible ranges.
    #[error("invalid parameters: {what}")]
    InvalidParams { what: String },

    /// The sign condition gating the collinear mass solve fails, or the
    /// solved mass is not positive.
    #[error("no solution: {reason} (f2 = {f2})")]
    NoSolution { reason: String, f2: f64 },

    /// Masses solve the linear balance but the squared rate is not positive,
    /// so no real relative equilibrium exists at this point. The solved data
    /// is carried for inspection.
    #[error("solved masses give omega_sq = {omega_sq} <= 0")]
    NonpositiveOmegaSq {
        omega_sq: f64,
        solution: Box<crate::releq::CollinearSolution>,
    },

    /// A balance closed at a non-positive squared rate.
    #[error("balance closes only at omega_sq = {omega_sq} <= 0")]
    NonpositiveRate { omega_sq: f64 },

    #[error(transparent)]
    Dynamics(#[from] DynamicsError),

    #[error(transparent)]
    Geometry(#[from] GeomError),
}
