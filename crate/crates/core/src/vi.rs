//! Projection fixed-point iteration for variational inequalities and
//! complementarity problems.
//!
//! `x_{k+1} = P_D(x_k - step * F(x_k))` with a fixed step. Trajectories
//! record how long consecutive iterates stay ordered by the cone.

use serde::{Deserialize, Serialize};

use crate::cone::{ConeSpec, DEFAULT_TOL};
use crate::error::{check_dims, Error, Result};
use crate::lattice::ncp_residual;
use crate::sets::{Polyhedron, DEFAULT_MAX_ITER};
use crate::vector::Vector;

/// Feasible set of a variational inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Domain {
    Cone { cone: ConeSpec },
    Polyhedron { polyhedron: Polyhedron },
}

impl Domain {
    pub fn dim(&self) -> usize {
        match self {
            Domain::Cone { cone } => cone.dim(),
            Domain::Polyhedron { polyhedron } => polyhedron.dim(),
        }
    }

    pub fn project(&self, x: &Vector, tol: f64) -> Result<Vector> {
        match self {
            Domain::Cone { cone } => cone.project(x),
            Domain::Polyhedron { polyhedron } => polyhedron.project(x, tol, DEFAULT_MAX_ITER),
        }
    }
}

/// `F(x) = M x + q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub matrix: Vec<Vec<f64>>,
    pub offset: Vector,
}

impl AffineMap {
    pub fn new(matrix: Vec<Vec<f64>>, offset: Vector) -> Result<Self> {
        let n = offset.dim();
        check_dims(n, matrix.len())?;
        for row in &matrix {
            check_dims(n, row.len())?;
        }
        if matrix.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("affine map".into()));
        }
        Ok(Self { matrix, offset })
    }

    /// `F(x) = x - c`.
    pub fn shifted_identity(c: Vector) -> Self {
        let n = c.dim();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self { matrix, offset: -&c }
    }

    pub fn dim(&self) -> usize {
        self.offset.dim()
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        Vector::from_raw(
            self.matrix
                .iter()
                .zip(self.offset.iter())
                .map(|(row, q)| row.iter().zip(x.iter()).map(|(a, b)| a * b).sum::<f64>() + q)
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VIProblem {
    pub domain: Domain,
    pub step: f64,
    pub x0: Vector,
    pub tol: f64,
    pub max_iter: usize,
}

impl VIProblem {
    pub fn new(domain: Domain, step: f64, x0: Vector) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidParameter(format!("step must be positive, got {step}")));
        }
        check_dims(domain.dim(), x0.dim())?;
        Ok(Self {
            domain,
            step,
            x0,
            tol: 1e-8,
            max_iter: 1000,
        })
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub iterates: Vec<Vector>,
    pub residuals: Vec<f64>,
    pub converged: bool,
    /// Number of leading steps `x_k -> x_{k+1}` that move in one fixed
    /// direction of the cone order.
    pub order_monotone_prefix: usize,
}

impl Trajectory {
    pub fn last(&self) -> &Vector {
        self.iterates.last().expect("trajectory starts with x0")
    }

    pub fn final_residual(&self) -> Option<f64> {
        self.residuals.last().copied()
    }

    pub fn iterations(&self) -> usize {
        self.iterates.len() - 1
    }

    /// Keeps every `every`-th iterate plus the last one.
    pub fn thinned(&self, every: usize) -> Trajectory {
        let every = every.max(1);
        let n = self.iterates.len();
        let iterates = self
            .iterates
            .iter()
            .enumerate()
            .filter(|(i, _)| i % every == 0 || *i + 1 == n)
            .map(|(_, v)| v.clone())
            .collect();
        Trajectory {
            iterates,
            ..self.clone()
        }
    }
}

fn evaluate<F: Fn(&Vector) -> Vector>(f: &F, x: &Vector) -> Result<Vector> {
    let fx = f(x);
    check_dims(x.dim(), fx.dim())?;
    if !fx.is_finite() {
        return Err(Error::NonFinite("map value".into()));
    }
    Ok(fx)
}

fn monotone_prefix(k: &ConeSpec, iterates: &[Vector], tol: f64) -> Result<usize> {
    let mut up = true;
    let mut down = true;
    let mut count = 0;
    for w in iterates.windows(2) {
        up &= k.leq(&w[0], &w[1], tol)?;
        down &= k.leq(&w[1], &w[0], tol)?;
        if !(up || down) {
            break;
        }
        count += 1;
    }
    Ok(count)
}

fn iterate<F, Stop>(p: &VIProblem, k: &ConeSpec, f: F, stop: Stop) -> Result<Trajectory>
where
    F: Fn(&Vector) -> Vector,
    Stop: Fn(&Vector, &Vector, &Vector) -> Result<f64>,
{
    check_dims(k.dim(), p.x0.dim())?;
    check_dims(p.domain.dim(), p.x0.dim())?;
    let inner_tol = (p.tol * 1e-3).max(1e-14);
    let mut iterates = vec![p.x0.clone()];
    let mut residuals = Vec::new();
    let mut converged = false;
    let mut x = p.x0.clone();
    for _ in 0..p.max_iter {
        let fx = evaluate(&f, &x)?;
        let next = p.domain.project(&x.axpy(-p.step, &fx), inner_tol)?;
        let r = stop(&x, &fx, &next)?;
        residuals.push(r);
        iterates.push(next.clone());
        x = next;
        if r <= p.tol {
            converged = true;
            break;
        }
    }
    let order_monotone_prefix = monotone_prefix(k, &iterates, DEFAULT_TOL)?;
    Ok(Trajectory {
        iterates,
        residuals,
        converged,
        order_monotone_prefix,
    })
}

/// Projection iteration with residual `|x_{k+1} - x_k| / step`; `k` defines
/// the order used for `order_monotone_prefix`.
pub fn solve_vi<F>(p: &VIProblem, k: &ConeSpec, f: F) -> Result<Trajectory>
where
    F: Fn(&Vector) -> Vector,
{
    let step = p.step;
    iterate(p, k, f, |x, _, next| Ok(next.dist(x) / step))
}

/// The same iteration on `D = K`, stopping once `|meet(x_k, F(x_k))|` is
/// below tolerance. The reported residual of step `k` is that of `x_{k+1}`.
pub fn ncp_solve<F>(k: &ConeSpec, f: F, x0: Vector, step: f64, tol: f64, max_iter: usize) -> Result<Trajectory>
where
    F: Fn(&Vector) -> Vector,
{
    let p = VIProblem::new(Domain::Cone { cone: k.clone() }, step, x0)?
        .with_tol(tol)
        .with_max_iter(max_iter);
    let r0 = ncp_residual(k, &p.x0, &evaluate(&f, &p.x0)?)?;
    if r0 <= tol {
        return Ok(Trajectory {
            iterates: vec![p.x0.clone()],
            residuals: vec![r0],
            converged: true,
            order_monotone_prefix: 0,
        });
    }
    iterate(&p, k, &f, |_, _, next| ncp_residual(k, next, &evaluate(&f, next)?))
}
