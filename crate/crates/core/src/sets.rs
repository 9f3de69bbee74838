//! Metric projection onto hyperplanes, halfspaces, affine sets and
//! H-polyhedra.
//!
//! Polyhedra are projected with Dykstra's cyclic scheme, which converges to
//! the nearest point of the intersection (plain alternating projection only
//! reaches *some* point of it). Axis boxes, optionally cut by one extra
//! halfspace, also have an exact projector used as a reference.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Method};
use crate::error::{check_dims, Error, Result};
use crate::sampling::{self, rng_from_seed};
use crate::vector::Vector;

pub const DEFAULT_MAX_ITER: usize = 10_000;

/// `{x : <u, x> = b}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPlane")]
pub struct Hyperplane {
    pub u: Vector,
    pub b: f64,
}

/// `{x : <u, x> <= b}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPlane")]
pub struct Halfspace {
    pub u: Vector,
    pub b: f64,
}

#[derive(Deserialize)]
struct RawPlane {
    u: Vector,
    b: f64,
}

impl TryFrom<RawPlane> for Hyperplane {
    type Error = Error;

    fn try_from(raw: RawPlane) -> Result<Self> {
        Hyperplane::new(raw.u, raw.b)
    }
}

impl TryFrom<RawPlane> for Halfspace {
    type Error = Error;

    fn try_from(raw: RawPlane) -> Result<Self> {
        Halfspace::new(raw.u, raw.b)
    }
}

fn check_normal(u: &Vector, b: f64) -> Result<()> {
    if !b.is_finite() {
        return Err(Error::NonFinite("offset".into()));
    }
    if u.norm() == 0.0 {
        return Err(Error::ZeroNormal);
    }
    Ok(())
}

fn project_onto_plane(u: &Vector, b: f64, x: &Vector) -> Vector {
    let step = (u.dot(x) - b) / u.dot(u);
    x.axpy(-step, u)
}

impl Hyperplane {
    pub fn new(u: Vector, b: f64) -> Result<Self> {
        check_normal(&u, b)?;
        Ok(Self { u, b })
    }

    /// The hyperplane with normal `u` through the point `a`.
    pub fn through(u: Vector, a: &Vector) -> Result<Self> {
        check_dims(u.dim(), a.dim())?;
        let b = u.dot(a);
        Self::new(u, b)
    }

    pub fn dim(&self) -> usize {
        self.u.dim()
    }

    /// Euclidean distance from `x` to the hyperplane.
    pub fn distance(&self, x: &Vector) -> f64 {
        (self.u.dot(x) - self.b).abs() / self.u.norm()
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        self.distance(x) <= tol
    }

    pub fn project(&self, x: &Vector) -> Result<Vector> {
        check_dims(self.dim(), x.dim())?;
        Ok(project_onto_plane(&self.u, self.b, x))
    }

    pub fn lower_halfspace(&self) -> Halfspace {
        Halfspace {
            u: self.u.clone(),
            b: self.b,
        }
    }

    /// An orthonormal basis of the direction space `{v : <u, v> = 0}`.
    pub fn direction_basis(&self) -> Vec<Vector> {
        orthonormal_complement(&self.u)
    }
}

impl Halfspace {
    pub fn new(u: Vector, b: f64) -> Result<Self> {
        check_normal(&u, b)?;
        Ok(Self { u, b })
    }

    pub fn dim(&self) -> usize {
        self.u.dim()
    }

    /// Signed distance; positive outside.
    pub fn violation(&self, x: &Vector) -> f64 {
        (self.u.dot(x) - self.b) / self.u.norm()
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        self.violation(x) <= tol
    }

    pub fn project(&self, x: &Vector) -> Result<Vector> {
        check_dims(self.dim(), x.dim())?;
        Ok(self.project_unchecked(x))
    }

    fn project_unchecked(&self, x: &Vector) -> Vector {
        if self.u.dot(x) <= self.b {
            x.clone()
        } else {
            project_onto_plane(&self.u, self.b, x)
        }
    }

    pub fn boundary(&self) -> Hyperplane {
        Hyperplane {
            u: self.u.clone(),
            b: self.b,
        }
    }
}

/// A finite intersection of halfspaces. `sharp` records the caller's claim
/// that no halfspace is redundant; it is not verified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPolyhedron")]
pub struct Polyhedron {
    pub halfspaces: Vec<Halfspace>,
    #[serde(default)]
    pub sharp: bool,
}

#[derive(Deserialize)]
struct RawPolyhedron {
    halfspaces: Vec<Halfspace>,
    #[serde(default)]
    sharp: bool,
}

impl TryFrom<RawPolyhedron> for Polyhedron {
    type Error = Error;

    fn try_from(raw: RawPolyhedron) -> Result<Self> {
        Polyhedron::new(raw.halfspaces, raw.sharp)
    }
}

impl Polyhedron {
    pub fn new(halfspaces: Vec<Halfspace>, sharp: bool) -> Result<Self> {
        let first = halfspaces.first().ok_or(Error::EmptyFacets)?;
        let dim = first.dim();
        for h in &halfspaces {
            check_dims(dim, h.dim())?;
        }
        Ok(Self { halfspaces, sharp })
    }

    /// The axis box `[lo, hi]`, facets ordered `+e_1, -e_1, +e_2, ...`.
    pub fn axis_box(lo: &Vector, hi: &Vector) -> Result<Self> {
        check_dims(lo.dim(), hi.dim())?;
        let m = lo.dim();
        let mut hs = Vec::with_capacity(2 * m);
        for i in 0..m {
            if lo[i] > hi[i] {
                return Err(Error::InvalidParameter(format!("box side {i} is empty")));
            }
            hs.push(Halfspace::new(Vector::unit(m, i), hi[i])?);
            hs.push(Halfspace::new(Vector::unit(m, i).scale(-1.0), -lo[i])?);
        }
        Self::new(hs, true)
    }

    /// The standard simplex `{x >= 0, sum x <= 1}`.
    pub fn simplex(dim: usize) -> Result<Self> {
        let mut hs: Vec<Halfspace> = (0..dim)
            .map(|i| Halfspace::new(Vector::unit(dim, i).scale(-1.0), 0.0))
            .collect::<Result<_>>()?;
        hs.push(Halfspace::new(Vector::from_raw(vec![1.0; dim]), 1.0)?);
        Self::new(hs, true)
    }

    pub fn dim(&self) -> usize {
        self.halfspaces[0].dim()
    }

    pub fn len(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halfspaces.is_empty()
    }

    /// Largest signed distance outside any halfspace, clamped at zero.
    pub fn max_violation(&self, x: &Vector) -> f64 {
        self.halfspaces.iter().map(|h| h.violation(x)).fold(0.0, f64::max)
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        x.dim() == self.dim() && self.max_violation(x) <= tol
    }

    /// `a + P`
    pub fn translate(&self, a: &Vector) -> Result<Self> {
        check_dims(self.dim(), a.dim())?;
        let hs = self
            .halfspaces
            .iter()
            .map(|h| Halfspace {
                u: h.u.clone(),
                b: h.b + h.u.dot(a),
            })
            .collect();
        Ok(Self {
            halfspaces: hs,
            sharp: self.sharp,
        })
    }

    /// `-P`
    pub fn negate(&self) -> Self {
        Self {
            halfspaces: self.halfspaces.iter().map(|h| Halfspace { u: -&h.u, b: h.b }).collect(),
            sharp: self.sharp,
        }
    }

    /// `eta * P` for `eta > 0`.
    pub fn scale(&self, eta: f64) -> Self {
        Self {
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| Halfspace {
                    u: h.u.clone(),
                    b: h.b * eta,
                })
                .collect(),
            sharp: self.sharp,
        }
    }

    /// Nearest point of the polyhedron, see [`project_polyhedron`].
    pub fn project(&self, x: &Vector, tol: f64, max_iter: usize) -> Result<Vector> {
        project_polyhedron(self, x, tol, max_iter)
    }
}

/// Dykstra's algorithm over the halfspace list.
///
/// Stops when the iterate violates no halfspace by more than `tol` and a full
/// cycle moves the iterate and the correction vectors by at most `tol`. When
/// the budget runs out the error says whether the cycle displacement was still
/// contracting (`NotConverged`) or had stalled (`SuspectedInfeasible`).
pub fn project_polyhedron(p: &Polyhedron, x: &Vector, tol: f64, max_iter: usize) -> Result<Vector> {
    check_dims(p.dim(), x.dim())?;
    if !x.is_finite() {
        return Err(Error::NonFinite("projection input".into()));
    }
    if p.max_violation(x) <= 0.0 {
        return Ok(x.clone());
    }
    let m = x.dim();
    let q = p.len();
    let unit: Vec<(Vec<f64>, f64)> = p
        .halfspaces
        .iter()
        .map(|h| {
            let n = h.u.norm();
            (h.u.iter().map(|v| v / n).collect(), h.b / n)
        })
        .collect();

    let mut cur: Vec<f64> = x.as_slice().to_vec();
    let mut incr = vec![vec![0.0; m]; q];
    let mut y = vec![0.0; m];
    let mut midpoint_disp = f64::INFINITY;
    let mut disp = f64::INFINITY;
    let mut violation = f64::INFINITY;

    for iter in 0..max_iter {
        let mut moved = 0.0;
        for ((u, b), p_i) in unit.iter().zip(incr.iter_mut()) {
            for k in 0..m {
                y[k] = cur[k] + p_i[k];
            }
            let excess = dot(u, &y) - b;
            let step = excess.max(0.0);
            for k in 0..m {
                let next = y[k] - step * u[k];
                let new_p = y[k] - next;
                moved += (next - cur[k]).powi(2) + (new_p - p_i[k]).powi(2);
                p_i[k] = new_p;
                cur[k] = next;
            }
        }
        disp = moved.sqrt();
        violation = unit.iter().map(|(u, b)| dot(u, &cur) - b).fold(0.0, f64::max);
        if disp <= tol && violation <= tol {
            return Ok(Vector::from_raw(cur));
        }
        if !disp.is_finite() {
            return Err(Error::NonFinite("Dykstra iterate".into()));
        }
        if iter + 1 == max_iter / 2 {
            midpoint_disp = disp;
        }
    }

    if disp > 0.5 * midpoint_disp {
        Err(Error::SuspectedInfeasible {
            iterations: max_iter,
            displacement: disp,
        })
    } else {
        Err(Error::NotConverged {
            iterations: max_iter,
            violation,
            displacement: disp,
        })
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A cylinder `C x R` over a polyhedron `C` of the first `m` coordinates,
/// unbounded in the last one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cylinder {
    pub base: Polyhedron,
}

impl Cylinder {
    pub fn new(base: Polyhedron) -> Self {
        Self { base }
    }

    pub fn dim(&self) -> usize {
        self.base.dim() + 1
    }

    /// The same set as halfspaces of the full space, normals `(a_i, 0)`.
    pub fn to_polyhedron(&self) -> Polyhedron {
        let hs = self
            .base
            .halfspaces
            .iter()
            .map(|h| {
                let mut u = h.u.as_slice().to_vec();
                u.push(0.0);
                Halfspace {
                    u: Vector::from_raw(u),
                    b: h.b,
                }
            })
            .collect();
        Polyhedron {
            halfspaces: hs,
            sharp: self.base.sharp,
        }
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        x.dim() == self.dim() && self.base.contains(&x.slice(0, self.dim() - 1), tol)
    }

    /// `P(x, t) = (P_C x, t)`
    pub fn project(&self, x: &Vector, tol: f64, max_iter: usize) -> Result<Vector> {
        check_dims(self.dim(), x.dim())?;
        let m = self.dim() - 1;
        let base = self.base.project(&x.slice(0, m), tol, max_iter)?;
        let mut v = base.into_inner();
        v.push(x[m]);
        Ok(Vector::from_raw(v))
    }
}

/// Componentwise clamp onto `[lo, hi]`.
pub fn project_box(lo: &Vector, hi: &Vector, x: &Vector) -> Result<Vector> {
    check_dims(lo.dim(), hi.dim())?;
    check_dims(lo.dim(), x.dim())?;
    Ok(Vector::from_raw(
        (0..x.dim()).map(|i| x[i].max(lo[i]).min(hi[i])).collect(),
    ))
}

/// Exact projection onto `[lo, hi] ∩ {<u, x> <= b}`.
///
/// The nearest point is `clamp(x - lambda u)` for the smallest `lambda >= 0`
/// that satisfies the cut; `<u, clamp(x - lambda u)>` is nonincreasing in
/// `lambda`, so bisection down to machine precision finds it.
pub fn project_box_with_cut(lo: &Vector, hi: &Vector, cut: &Halfspace, x: &Vector) -> Result<Vector> {
    check_dims(lo.dim(), cut.dim())?;
    let clamp = |lambda: f64| project_box(lo, hi, &x.axpy(-lambda, &cut.u));
    let p0 = clamp(0.0)?;
    if cut.u.dot(&p0) <= cut.b {
        return Ok(p0);
    }
    let lowest: f64 = (0..lo.dim())
        .map(|i| cut.u[i] * if cut.u[i] > 0.0 { lo[i] } else { hi[i] })
        .sum();
    if lowest > cut.b {
        return Err(Error::SuspectedInfeasible {
            iterations: 0,
            displacement: lowest - cut.b,
        });
    }
    let g = |lambda: f64| -> Result<f64> { Ok(cut.u.dot(&clamp(lambda)?) - cut.b) };
    let mut a = 0.0;
    let mut b = 1.0;
    while g(b)? > 0.0 {
        a = b;
        b *= 2.0;
        if !b.is_finite() {
            return Err(Error::NonFinite("box cut multiplier".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if g(mid)? > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    clamp(b)
}

/// Projection onto the affine set `{x : <u_i, x> = b_i for all i}`, by the
/// normal equations of the stacked constraints (least squares when the
/// normals are dependent).
pub fn project_affine(planes: &[Hyperplane], x: &Vector) -> Result<Vector> {
    let first = planes.first().ok_or(Error::EmptyFacets)?;
    let m = first.dim();
    check_dims(m, x.dim())?;
    for h in planes {
        check_dims(m, h.dim())?;
    }
    let a = DMatrix::from_fn(planes.len(), m, |i, j| planes[i].u[j]);
    let xv = DVector::from_column_slice(x.as_slice());
    let resid = &a * &xv - DVector::from_iterator(planes.len(), planes.iter().map(|h| h.b));
    let gram = &a * a.transpose();
    let svd = gram.svd(true, true);
    let mult = svd
        .solve(&resid, 1e-12)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let p = xv - a.transpose() * mult;
    Ok(Vector::from_raw(p.iter().copied().collect()))
}

/// Orthonormal basis of the orthogonal complement of `u`.
pub fn orthonormal_complement(u: &Vector) -> Vec<Vector> {
    let m = u.dim();
    let mut basis: Vec<Vector> = Vec::with_capacity(m.saturating_sub(1));
    let mut frame = vec![u.normalized().expect("nonzero normal")];
    for i in 0..m {
        let mut v = Vector::unit(m, i);
        for f in &frame {
            v = v.axpy(-v.dot(f), f);
        }
        if let Some(n) = v.normalized().filter(|_| v.norm() > 1e-8) {
            frame.push(n.clone());
            basis.push(n);
        }
        if basis.len() + 1 == m {
            break;
        }
    }
    basis
}

/// Checks on sampled configurations that
///
/// ```text
/// P_D(-x) = -P_{-D}(x)
/// P_{x+D}(y) = x + P_D(y - x)
/// P_D(t x + (1 - t) P_D x) = P_D x,   t in [0, 1]
/// ```
///
/// all hold to `tol`. Sample points are Gaussian with spread `scale` around
/// the projection of the origin. The witness of a failure is `(x, y)`.
pub fn projection_identities_check(
    d: &Polyhedron,
    samples: usize,
    seed: u64,
    scale: f64,
    tol: f64,
) -> Result<Certificate> {
    let inner_tol = (tol * 1e-4).max(1e-13);
    let proj = |set: &Polyhedron, z: &Vector| project_polyhedron(set, z, inner_tol, DEFAULT_MAX_ITER);
    let m = d.dim();
    let center = proj(d, &Vector::zeros(m))?;
    let neg = d.negate();
    let mut rng = rng_from_seed(seed);
    use rand::Rng;
    for _ in 0..samples {
        let x = center.axpy(scale, &sampling::gaussian(m, &mut rng));
        let y = center.axpy(scale, &sampling::gaussian(m, &mut rng));
        let t: f64 = rng.random_range(0.0..=1.0);

        let px = proj(d, &x)?;
        let en = proj(d, &-&x)?.dist(&-&proj(&neg, &x)?);
        let et = proj(&d.translate(&x)?, &y)?.dist(&(&x + &proj(d, &(&y - &x))?));
        let sun = proj(d, &x.scale(t).axpy(1.0 - t, &px))?.dist(&px);
        if en > tol || et > tol || sun > tol {
            return Ok(Certificate::refuted(Method::Sampled, (x, y)).sampled(samples, seed));
        }
    }
    Ok(Certificate::no_counterexample(samples, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_box(m: usize) -> Polyhedron {
        Polyhedron::axis_box(&Vector::zeros(m), &Vector::from_raw(vec![1.0; m])).unwrap()
    }

    #[test]
    fn hyperplane_examples() {
        let h = Hyperplane::new(vector![0, 1], 0.0).unwrap();
        assert_eq!(h.project(&vector![3, 4]).unwrap(), vector![3, 0]);
        let on = vector![7, 0];
        assert_eq!(h.project(&on).unwrap(), on);
        let h = Hyperplane::new(vector![1, 1], 1.0).unwrap();
        let p = h.project(&vector![1, 1]).unwrap();
        assert!(p.dist(&vector![0.5, 0.5]) < 1e-15);
        assert!(h.distance(&p) < 1e-12);
        assert_eq!(Hyperplane::new(vector![0, 0], 1.0), Err(Error::ZeroNormal));
    }

    #[test]
    fn hyperplane_projection_is_argmin() {
        let h = Hyperplane::new(vector![1, 1], 1.0).unwrap();
        let x = vector![1, 1];
        let p = h.project(&x).unwrap();
        // scan the line s -> (s, 1 - s)
        let best = (-2000..=2000)
            .map(|i| i as f64 * 1e-3)
            .map(|s| (s, x.dist(&vector![s, 1.0 - s])))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert!((best.0 - p[0]).abs() <= 1e-3);
    }

    #[test]
    fn halfspace_examples() {
        let h = Halfspace::new(vector![1, 1], 1.0).unwrap();
        let inside = vector![0.2, 0.3];
        assert_eq!(h.project(&inside).unwrap(), inside);
        let edge = vector![0.5, 0.5];
        assert_eq!(h.project(&edge).unwrap(), edge);
        let out = vector![2, 1];
        assert_eq!(h.project(&out).unwrap(), h.boundary().project(&out).unwrap());
    }

    #[test]
    fn polyhedron_examples() {
        let b = unit_box(2);
        let p = b.project(&vector![2, -1], 1e-12, DEFAULT_MAX_ITER).unwrap();
        assert!(p.dist(&vector![1, 0]) < 1e-12);
        let inside = vector![0.3, 0.9];
        assert_eq!(b.project(&inside, 1e-12, DEFAULT_MAX_ITER).unwrap(), inside);
        let single = Polyhedron::new(vec![Halfspace::new(vector![1, 1], 1.0).unwrap()], true).unwrap();
        let p = single.project(&vector![1, 1], 1e-12, DEFAULT_MAX_ITER).unwrap();
        assert!(p.dist(&vector![0.5, 0.5]) < 1e-15);
    }

    #[test]
    fn dykstra_reaches_the_nearest_point() {
        // Two halfspaces meeting at an acute angle; plain alternating
        // projection from (3, 0.5) stops at a non-nearest point.
        let p = Polyhedron::new(
            vec![
                Halfspace::new(vector![1, 0], 0.0).unwrap(),
                Halfspace::new(vector![1, -1], -1.0).unwrap(),
            ],
            true,
        )
        .unwrap();
        let x = vector![3, 0.5];
        let proj = p.project(&x, 1e-13, DEFAULT_MAX_ITER).unwrap();
        // The nearest point is the vertex (0, 1).
        assert!(proj.dist(&vector![0, 1]) < 1e-9, "{proj:?}");
    }

    #[test]
    fn infeasible_polyhedron_is_reported() {
        let p = Polyhedron::new(
            vec![
                Halfspace::new(vector![1, 0], 0.0).unwrap(),
                Halfspace::new(vector![-1, 0], -1.0).unwrap(),
            ],
            false,
        )
        .unwrap();
        let err = p.project(&vector![5, 5], 1e-12, 2000).unwrap_err();
        assert!(matches!(err, Error::SuspectedInfeasible { .. }), "{err:?}");
    }

    #[test]
    fn box_with_cut_matches_dykstra() {
        let lo = vector![0, 0, 0];
        let hi = vector![1, 2, 1];
        let cut = Halfspace::new(vector![1, 1, -0.5], 1.2).unwrap();
        let mut hs = Polyhedron::axis_box(&lo, &hi).unwrap().halfspaces;
        hs.push(cut.clone());
        let poly = Polyhedron::new(hs, true).unwrap();
        for x in [
            vector![2, 2, 2],
            vector![-1, 3, 0.5],
            vector![0.9, 0.9, -1],
            vector![0.1, 0.1, 0.1],
        ] {
            let exact = project_box_with_cut(&lo, &hi, &cut, &x).unwrap();
            let dyk = poly.project(&x, 1e-13, 100_000).unwrap();
            assert!(exact.dist(&dyk) < 1e-9, "{x:?}: {exact:?} vs {dyk:?}");
        }
    }

    #[test]
    fn cylinder_projection_keeps_height() {
        let cyl = Cylinder::new(unit_box(2));
        let x = vector![2, -1, 7.5];
        let p = cyl.project(&x, 1e-13, DEFAULT_MAX_ITER).unwrap();
        assert!(p.dist(&vector![1, 0, 7.5]) < 1e-12);
        let full = cyl.to_polyhedron();
        let q = full.project(&x, 1e-13, DEFAULT_MAX_ITER).unwrap();
        assert!(p.dist(&q) < 1e-9);
        assert!(cyl.contains(&p, 1e-12) && full.contains(&p, 1e-12));
    }

    #[test]
    fn affine_projection() {
        let planes = [
            Hyperplane::new(vector![1, 0, 0], 1.0).unwrap(),
            Hyperplane::new(vector![0, 1, 0], 2.0).unwrap(),
        ];
        let p = project_affine(&planes, &vector![5, 5, 5]).unwrap();
        assert!(p.dist(&vector![1, 2, 5]) < 1e-12);
        // duplicated constraint is harmless
        let planes = [
            Hyperplane::new(vector![1, 1], 1.0).unwrap(),
            Hyperplane::new(vector![2, 2], 2.0).unwrap(),
        ];
        let p = project_affine(&planes, &vector![1, 1]).unwrap();
        assert!(p.dist(&vector![0.5, 0.5]) < 1e-12);
    }

    #[test]
    fn complement_basis_is_orthonormal() {
        let u = vector![1, 2, -2, 0.5];
        let basis = orthonormal_complement(&u);
        assert_eq!(basis.len(), 3);
        for (i, a) in basis.iter().enumerate() {
            assert!(a.dot(&u).abs() < 1e-12);
            for (j, b) in basis.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((a.dot(b) - target).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn identity_examples() {
        let b = unit_box(2);
        let x = vector![2, 0.5];
        let px = b.project(&x, 1e-13, DEFAULT_MAX_ITER).unwrap();
        for t in [0.0, 0.5, 1.0] {
            let z = x.scale(t).axpy(1.0 - t, &px);
            let pz = b.project(&z, 1e-13, DEFAULT_MAX_ITER).unwrap();
            assert!(pz.dist(&px) < 1e-12);
        }
        assert!(px.dist(&vector![1, 0.5]) < 1e-12);
        let cert = projection_identities_check(&b, 50, 1, 2.0, 1e-6).unwrap();
        assert!(!cert.is_refuted());
    }

    #[test]
    fn json_schema() {
        let p: Polyhedron =
            serde_json::from_str(r#"{"halfspaces":[{"u":[1,0],"b":1},{"u":[-1,0],"b":0}],"sharp":true}"#).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.sharp);
        assert!(serde_json::from_str::<Polyhedron>(r#"{"halfspaces":[]}"#).is_err());
        assert!(serde_json::from_str::<Polyhedron>(r#"{"halfspaces":[{"u":[0,0],"b":1}]}"#).is_err());
        assert!(serde_json::from_str::<Polyhedron>(r#"{"halfspaces":[{"u":[1,0],"b":1},{"u":[1],"b":0}]}"#).is_err());
    }
}
