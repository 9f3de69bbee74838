//! Self-dual cones: membership, metric projection, Moreau decomposition and
//! the order they induce.
//!
//! Every cone here satisfies `K = K*`, so the projection onto `K` splits any
//! point into two orthogonal members of `K`:
//!
//! ```text
//! x = P_K(x) - P_K(-x),    <P_K(x), P_K(-x)> = 0
//! ```
//!
//! The order is `x <=_K y  <=>  y - x in K`.

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};
use crate::sampling::{self, rng_from_seed};
use crate::vector::Vector;

/// Default tolerance for membership and orthogonality tests.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance on `Q^T Q = I` when accepting a rotation matrix.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;

/// A self-dual cone.
///
/// `Lorentz { dim }` is `{(x, t) in R^(dim-1) x R : |x| <= t}`; `dim` counts
/// the last coordinate as well.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", try_from = "RawCone")]
pub enum ConeSpec {
    Orthant { dim: usize },
    Lorentz { dim: usize },
    RotatedOrthant { q: Rotation },
    Product { parts: Vec<ConeSpec> },
}

/// An orthogonal matrix, stored by rows. `RotatedOrthant{q}` is `Q(R^m_+)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct Rotation {
    rows: Vec<Vec<f64>>,
}

impl Rotation {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::InvalidCone("rotation matrix is empty".into()));
        }
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidCone("rotation matrix is not square".into()));
        }
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("rotation matrix".into()));
        }
        for i in 0..m {
            for j in 0..m {
                // (Q^T Q)_{ij} = sum_k Q_{ki} Q_{kj}
                let g: f64 = (0..m).map(|k| rows[k][i] * rows[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                if (g - target).abs() > ORTHOGONALITY_TOL {
                    return Err(Error::InvalidCone(format!(
                        "Q^T Q deviates from the identity at ({i}, {j}) by {:e}",
                        (g - target).abs()
                    )));
                }
            }
        }
        Ok(Self { rows })
    }

    /// Haar-distributed random rotation of `R^dim`.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let g = DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(rand_distr::StandardNormal));
        let qr = g.qr();
        let mut q = qr.q();
        let r = qr.r();
        for j in 0..dim {
            if r[(j, j)] < 0.0 {
                q.column_mut(j).neg_mut();
            }
        }
        let rows = (0..dim).map(|i| q.row(i).iter().copied().collect()).collect();
        Self::new(rows).expect("QR factor is orthogonal")
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `Q x`
    pub fn apply(&self, x: &Vector) -> Vector {
        Vector::from_raw(
            self.rows
                .iter()
                .map(|r| r.iter().zip(x.iter()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// `Q^T x`
    pub fn apply_transpose(&self, x: &Vector) -> Vector {
        let m = self.dim();
        let mut out = vec![0.0; m];
        for (row, xi) in self.rows.iter().zip(x.iter()) {
            for (o, q) in out.iter_mut().zip(row) {
                *o += q * xi;
            }
        }
        Vector::from_raw(out)
    }

    /// Columns of `Q`, the extreme rays of `Q(R^m_+)`.
    pub fn columns(&self) -> Vec<Vector> {
        (0..self.dim())
            .map(|j| Vector::from_raw(self.rows.iter().map(|r| r[j]).collect()))
            .collect()
    }
}

impl TryFrom<Vec<Vec<f64>>> for Rotation {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Rotation::new(rows)
    }
}

impl From<Rotation> for Vec<Vec<f64>> {
    fn from(r: Rotation) -> Self {
        r.rows
    }
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum RawCone {
    Orthant { dim: usize },
    Lorentz { dim: usize },
    RotatedOrthant { q: Rotation },
    Product { parts: Vec<ConeSpec> },
}

impl TryFrom<RawCone> for ConeSpec {
    type Error = Error;

    fn try_from(raw: RawCone) -> Result<Self> {
        let cone = match raw {
            RawCone::Orthant { dim } => ConeSpec::Orthant { dim },
            RawCone::Lorentz { dim } => ConeSpec::Lorentz { dim },
            RawCone::RotatedOrthant { q } => ConeSpec::RotatedOrthant { q },
            RawCone::Product { parts } => ConeSpec::Product { parts },
        };
        cone.validate()?;
        Ok(cone)
    }
}

/// The two orthogonal pieces of the Moreau decomposition `x = plus - minus`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoreauPair {
    pub plus: Vector,
    pub minus: Vector,
}

impl MoreauPair {
    /// `plus - minus`, which reproduces the decomposed point.
    pub fn reconstruct(&self) -> Vector {
        &self.plus - &self.minus
    }

    pub fn inner(&self) -> f64 {
        self.plus.dot(&self.minus)
    }
}

impl ConeSpec {
    pub fn orthant(dim: usize) -> Result<Self> {
        let k = ConeSpec::Orthant { dim };
        k.validate()?;
        Ok(k)
    }

    pub fn lorentz(dim: usize) -> Result<Self> {
        let k = ConeSpec::Lorentz { dim };
        k.validate()?;
        Ok(k)
    }

    pub fn rotated_orthant(rows: Vec<Vec<f64>>) -> Result<Self> {
        Ok(ConeSpec::RotatedOrthant {
            q: Rotation::new(rows)?,
        })
    }

    pub fn product(parts: Vec<ConeSpec>) -> Result<Self> {
        let k = ConeSpec::Product { parts };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ConeSpec::Orthant { dim } if *dim == 0 => {
                Err(Error::InvalidCone("orthant dimension must be positive".into()))
            }
            ConeSpec::Lorentz { dim } if *dim < 2 => {
                Err(Error::InvalidCone("Lorentz cone needs dimension at least 2".into()))
            }
            ConeSpec::Product { parts } if parts.is_empty() => Err(Error::InvalidCone("product of zero cones".into())),
            ConeSpec::Product { parts } => parts.iter().try_for_each(ConeSpec::validate),
            _ => Ok(()),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ConeSpec::Orthant { dim } | ConeSpec::Lorentz { dim } => *dim,
            ConeSpec::RotatedOrthant { q } => q.dim(),
            ConeSpec::Product { parts } => parts.iter().map(ConeSpec::dim).sum(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            ConeSpec::Orthant { dim } => format!("orthant{{{dim}}}"),
            ConeSpec::Lorentz { dim } => format!("lorentz{{{dim}}}"),
            ConeSpec::RotatedOrthant { q } => format!("rotated_orthant{{{}}}", q.dim()),
            ConeSpec::Product { parts } => {
                let names: Vec<_> = parts.iter().map(ConeSpec::name).collect();
                format!("product[{}]", names.join(" x "))
            }
        }
    }

    fn check(&self, x: &Vector) -> Result<()> {
        check_dims(self.dim(), x.dim())
    }

    /// Membership in the `tol`-relaxation of the cone, i.e.
    /// `violation(x) <= tol`.
    pub fn contains(&self, x: &Vector, tol: f64) -> Result<bool> {
        Ok(self.violation(x)? <= tol)
    }

    /// How far `x` is from satisfying the membership rule; `<= 0` inside.
    ///
    /// Orthant: `max(-x_i)`. Lorentz: `|x| - t`. Rotated orthant: `max(-(Q^T x)_i)`.
    /// Products take the worst part.
    pub fn violation(&self, x: &Vector) -> Result<f64> {
        self.check(x)?;
        Ok(self.violation_unchecked(x.as_slice()))
    }

    fn violation_unchecked(&self, x: &[f64]) -> f64 {
        match self {
            ConeSpec::Orthant { .. } => x.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(-v)),
            ConeSpec::Lorentz { dim } => {
                let (bar, t) = x.split_at(dim - 1);
                norm(bar) - t[0]
            }
            ConeSpec::RotatedOrthant { q } => q
                .apply_transpose(&Vector::from_raw(x.to_vec()))
                .iter()
                .fold(f64::NEG_INFINITY, |m, &v| m.max(-v)),
            ConeSpec::Product { parts } => {
                let mut offset = 0;
                parts.iter().fold(f64::NEG_INFINITY, |m, p| {
                    let d = p.dim();
                    let v = p.violation_unchecked(&x[offset..offset + d]);
                    offset += d;
                    m.max(v)
                })
            }
        }
    }

    /// Metric projection `P_K(x)` in closed form.
    pub fn project(&self, x: &Vector) -> Result<Vector> {
        self.check(x)?;
        let mut out = x.as_slice().to_vec();
        self.project_in_place(&mut out);
        Ok(Vector::from_raw(out))
    }

    fn project_in_place(&self, x: &mut [f64]) {
        match self {
            ConeSpec::Orthant { .. } => x.iter_mut().for_each(|v| *v = v.max(0.0)),
            ConeSpec::Lorentz { dim } => project_lorentz(x, *dim),
            ConeSpec::RotatedOrthant { q } => {
                let coords = q.apply_transpose(&Vector::from_raw(x.to_vec())).map(|v| v.max(0.0));
                x.copy_from_slice(q.apply(&coords).as_slice());
            }
            ConeSpec::Product { parts } => {
                let mut offset = 0;
                for p in parts {
                    let d = p.dim();
                    p.project_in_place(&mut x[offset..offset + d]);
                    offset += d;
                }
            }
        }
    }

    pub fn moreau(&self, x: &Vector) -> Result<MoreauPair> {
        Ok(MoreauPair {
            plus: self.project(x)?,
            minus: self.project(&-x)?,
        })
    }

    /// `x <=_K y`, i.e. `y - x` lies in the `tol`-relaxed cone.
    pub fn leq(&self, x: &Vector, y: &Vector, tol: f64) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        self.contains(&(y - x), tol)
    }

    /// `n` members of the cone, deterministic in `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Vec<Vector> {
        let mut rng = rng_from_seed(seed);
        (0..n).map(|_| self.sample_point(&mut rng)).collect()
    }

    /// One random member of the cone.
    ///
    /// Orthant draws are absolute values of normals. Lorentz draws put the
    /// last coordinate at `|x| + e` where `e` is zero a quarter of the time,
    /// so boundary rays show up regularly. Rotated orthants push orthant
    /// draws forward through `Q`, which holds up to rounding in `Q^T Q x`.
    pub fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Vector {
        match self {
            ConeSpec::Orthant { dim } => sampling::gaussian(*dim, rng).map(f64::abs),
            ConeSpec::Lorentz { dim } => {
                let bar = sampling::gaussian(dim - 1, rng);
                let slack = if rng.random_bool(0.25) {
                    0.0
                } else {
                    sampling::gaussian(1, rng)[0].abs()
                };
                let t = bar.norm() + slack;
                let mut v = bar.into_inner();
                v.push(t);
                Vector::from_raw(v)
            }
            ConeSpec::RotatedOrthant { q } => q.apply(&sampling::gaussian(q.dim(), rng).map(f64::abs)),
            ConeSpec::Product { parts } => {
                let pieces: Vec<Vector> = parts.iter().map(|p| p.sample_point(rng)).collect();
                Vector::concat(&pieces)
            }
        }
    }

    /// Extreme rays when the cone is polyhedral (orthants, rotated orthants,
    /// `Lorentz{2}`, and products of those); `None` otherwise.
    pub fn generators(&self) -> Option<Vec<Vector>> {
        match self {
            ConeSpec::Orthant { dim } => Some((0..*dim).map(|i| Vector::unit(*dim, i)).collect()),
            ConeSpec::Lorentz { dim: 2 } => Some(vec![vector![-1, 1], vector![1, 1]]),
            ConeSpec::Lorentz { .. } => None,
            ConeSpec::RotatedOrthant { q } => Some(q.columns()),
            ConeSpec::Product { parts } => {
                let total = self.dim();
                let mut offset = 0;
                let mut gens = Vec::new();
                for p in parts {
                    for g in p.generators()? {
                        let mut v = vec![0.0; total];
                        v[offset..offset + p.dim()].copy_from_slice(g.as_slice());
                        gens.push(Vector::from_raw(v));
                    }
                    offset += p.dim();
                }
                Some(gens)
            }
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn project_lorentz(x: &mut [f64], dim: usize) {
    let t = x[dim - 1];
    let nx = norm(&x[..dim - 1]);
    if nx <= t {
        return;
    }
    if nx <= -t {
        x.iter_mut().for_each(|v| *v = 0.0);
        return;
    }
    let s = 0.5 * (t + nx);
    let f = s / nx;
    x[..dim - 1].iter_mut().for_each(|v| *v *= f);
    x[dim - 1] = s;
}
