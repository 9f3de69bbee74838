//! Lattice-like operations induced by self-dual cones.
//!
//! For a self-dual cone `K` (nonnegative orthant, Lorentz cone, rotated
//! orthant, or a product of these) the metric projection onto `K` defines
//!
//! ```text
//! meet(x, y) = x - P_K(x - y)        join(x, y) = x + P_K(y - x)
//! ```
//!
//! which reduce to componentwise min and max on the orthant. The crate
//! provides these operations, projections onto polyhedral sets, and
//! certificates deciding which hyperplanes and polyhedra are closed under
//! meet/join and which have order-preserving (isotone) projections.
//!
//! ```
//! use conelattice::certify::{certify_polyhedron, CertifyOptions};
//! use conelattice::{join, meet, ConeSpec, Polyhedron, Vector};
//!
//! let k = ConeSpec::lorentz(3)?;
//! let x = Vector::new(vec![1.0, 0.0, 1.0])?;
//! let y = Vector::new(vec![-1.0, 0.0, 1.0])?;
//! assert!(meet(&k, &x, &y)?.norm() < 1e-12);
//! assert!(join(&k, &x, &y)?.dist(&Vector::new(vec![0.0, 0.0, 2.0])?) < 1e-12);
//!
//! let lo = Vector::new(vec![0.0, 0.0])?;
//! let hi = Vector::new(vec![1.0, 2.0])?;
//! let boxed = Polyhedron::axis_box(&lo, &hi)?;
//! let report = certify_polyhedron(&ConeSpec::orthant(2)?, &boxed, &CertifyOptions::default())?;
//! assert!(report.invariant.passed());
//! # Ok::<(), conelattice::Error>(())
//! ```

#[macro_use]
mod vector;

pub mod certificate;
pub mod certify;
pub mod cone;
mod error;
pub mod lattice;
pub mod props;
pub mod sampling;
pub mod sets;
pub mod vi;

pub use certificate::{Certificate, Method, Verdict};
pub use cone::{ConeSpec, MoreauPair, Rotation, DEFAULT_TOL};
pub use error::{Error, Result};
pub use lattice::{comparable, join, meet, minimal_invariant, ncp_residual, MinimalInvariantSet, Rectangle};
pub use sets::{Cylinder, Halfspace, Hyperplane, Polyhedron};
pub use vector::Vector;
