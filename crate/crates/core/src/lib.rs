//! Gravitational n-body dynamics on the hyperbolic plane.
//!
//! The crate provides:
//!
//! * [`hypergeom`]: the hyperboloid and Poincare half-plane models of the
//!   hyperbolic plane, their isometry groups, and isometric conversion
//!   between them;
//! * [`dynamics`]: the cotangent-potential equations of motion in both
//!   models, energies, and a fixed-step RK4 integrator with manifold
//!   projection;
//! * [`releq`]: relative-equilibrium analysis, including a numerical
//!   non-existence certificate for regular polygon configurations under
//!   boost motions, a rotating-polygon positive control, and a family of
//!   five-body collinear relative equilibria with its mass solver;
//! * [`cli`]: the machinery behind the `hnb` command line tool (scans,
//!   region maps, simulation drivers, JSON/CSV emission).

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod hypergeom;
pub mod releq;

pub use error::{DynamicsError, GeomError, ReleqError};
