//! Meet and join induced by a self-dual cone.
//!
//! `meet(x, y)` is the projection of `y` onto `x - K` and `join(x, y)` the
//! projection of `y` onto `x + K`:
//!
//! ```text
//! meet(x, y) = x - P_K(x - y)
//! join(x, y) = x + P_K(y - x)
//! ```
//!
//! For the nonnegative orthant these are the componentwise min and max.

use serde::{Deserialize, Serialize};

use crate::cone::ConeSpec;
use crate::error::{check_dims, Result};
use crate::vector::Vector;

pub fn meet(k: &ConeSpec, x: &Vector, y: &Vector) -> Result<Vector> {
    check_dims(x.dim(), y.dim())?;
    Ok(x - &k.project(&(x - y))?)
}

pub fn join(k: &ConeSpec, x: &Vector, y: &Vector) -> Result<Vector> {
    check_dims(x.dim(), y.dim())?;
    Ok(x + &k.project(&(y - x))?)
}

/// `x <=_K y` or `y <=_K x`.
pub fn comparable(k: &ConeSpec, x: &Vector, y: &Vector, tol: f64) -> Result<bool> {
    Ok(k.leq(x, y, tol)? || k.leq(y, x, tol)?)
}

/// The planar rectangle with vertices `x`, `y`, `meet(x, y)` and `join(x, y)`.
///
/// The edges `x - meet` and `y - meet` are orthogonal members of `K` and the
/// opposite corner is `join = x + y - meet`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub v_x: Vector,
    pub v_y: Vector,
    pub v_meet: Vector,
    pub v_join: Vector,
}

impl Rectangle {
    pub fn new(k: &ConeSpec, x: &Vector, y: &Vector) -> Result<Self> {
        Ok(Self {
            v_meet: meet(k, x, y)?,
            v_join: join(k, x, y)?,
            v_x: x.clone(),
            v_y: y.clone(),
        })
    }

    pub fn vertices(&self) -> [&Vector; 4] {
        [&self.v_x, &self.v_y, &self.v_meet, &self.v_join]
    }

    /// Largest violation of the three rectangle identities: the diagonal
    /// sums agree, and both corners adjacent to `meet` are right angles.
    pub fn defect(&self) -> f64 {
        let sum = (&(&self.v_meet + &self.v_join) - &(&self.v_x + &self.v_y)).norm();
        let a = (&self.v_x - &self.v_meet).dot(&(&self.v_join - &self.v_x)).abs();
        let b = (&self.v_y - &self.v_meet).dot(&(&self.v_join - &self.v_y)).abs();
        sum.max(a).max(b)
    }

    /// Coordinates `(alpha, beta)` of the orthogonal projection of `p` onto the
    /// rectangle's plane, in the frame `meet + alpha (x - meet) + beta (y - meet)`,
    /// plus the distance from `p` to that plane.
    pub fn plane_coordinates(&self, p: &Vector) -> (f64, f64, f64) {
        let e1 = &self.v_x - &self.v_meet;
        let e2 = &self.v_y - &self.v_meet;
        let d = p - &self.v_meet;
        // edges at rounding level (comparable endpoints) carry no direction
        let floor = 1e-12 * (1.0 + self.v_x.norm() + self.v_y.norm());
        let coord = |e: &Vector| {
            let n = e.norm();
            if n > floor {
                d.dot(e) / (n * n)
            } else {
                0.0
            }
        };
        let (alpha, beta) = (coord(&e1), coord(&e2));
        let foot = self.v_meet.axpy(alpha, &e1).axpy(beta, &e2);
        (alpha, beta, p.dist(&foot))
    }

    /// Whether `p` lies in the rectangle up to `tol`, measured in distance to
    /// the plane and as a length along each edge.
    pub fn contains(&self, p: &Vector, tol: f64) -> bool {
        let (alpha, beta, off) = self.plane_coordinates(p);
        let l1 = self.v_x.dist(&self.v_meet);
        let l2 = self.v_y.dist(&self.v_meet);
        let inside = |c: f64, len: f64| c * len >= -tol && (c - 1.0) * len <= tol;
        off <= tol && inside(alpha, l1) && inside(beta, l2)
    }

    /// `a x + b y + c meet + d join` for nonnegative weights summing to one.
    pub fn convex_combination(&self, w: [f64; 4]) -> Vector {
        let [a, b, c, d] = w;
        self.v_x
            .scale(a)
            .axpy(b, &self.v_y)
            .axpy(c, &self.v_meet)
            .axpy(d, &self.v_join)
    }
}

/// The smallest set containing `x` and `y` that is closed under meet and join
/// and convex: the segment endpoints when comparable, the rectangle otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MinimalInvariantSet {
    Comparable { endpoints: (Vector, Vector) },
    Incomparable { rect: Rectangle },
}

/// Ties near the boundary of `K` resolve toward `Comparable`.
pub fn minimal_invariant(k: &ConeSpec, x: &Vector, y: &Vector, tol: f64) -> Result<MinimalInvariantSet> {
    if comparable(k, x, y, tol)? {
        Ok(MinimalInvariantSet::Comparable {
            endpoints: (x.clone(), y.clone()),
        })
    } else {
        Ok(MinimalInvariantSet::Incomparable {
            rect: Rectangle::new(k, x, y)?,
        })
    }
}

/// `|meet(x, F(x))|`, which vanishes exactly when `x` and `F(x)` are
/// complementary members of `K`.
pub fn ncp_residual(k: &ConeSpec, x: &Vector, fx: &Vector) -> Result<f64> {
    Ok(meet(k, x, fx)?.norm())
}
