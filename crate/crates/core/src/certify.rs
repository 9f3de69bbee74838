//! Decision procedures and falsifiers for invariance under meet/join and
//! isotonicity of metric projections.
//!
//! For a hyperplane `H` through the origin with unit normal `u`, `P_H` is
//! isotone exactly when the bilinear form
//!
//! ```text
//! g(x, y) = <x, y> - <u, x><u, y>
//! ```
//!
//! is nonnegative on `K x K`, and an isotone `P_H` makes `H` invariant. A
//! polyhedron with a sharp H-representation is invariant (and has an isotone
//! projection) exactly when every facet hyperplane passes that test, so the
//! per-facet certificates decide the whole polyhedron.
//!
//! Closed forms exist for the orthant (`u_i u_j <= 0` for `i != j`) and the
//! Lorentz cone (the normal's last coordinate vanishes). Polyhedral cones are
//! decided on generator pairs since `g` is bilinear. Everything else is
//! sampled, and sampling can refute but never prove.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Method, Verdict};
use crate::cone::{ConeSpec, DEFAULT_TOL};
use crate::error::{check_dims, Error, Result};
use crate::lattice::{join, meet};
use crate::sampling::{self, rng_from_seed, SeededRng};
use crate::sets::{orthonormal_complement, Halfspace, Hyperplane, Polyhedron};
use crate::vector::Vector;

/// Number of random pairs drawn when a sampled facet test is chosen implicitly.
pub const DEFAULT_SAMPLES: usize = 1000;

fn unit_normal(u: &Vector) -> Result<Vector> {
    u.normalized().ok_or(Error::ZeroNormal)
}

/// `<x, y> - <u, x><u, y>` for a unit vector `u`.
pub fn bilinear_gap(u: &Vector, x: &Vector, y: &Vector) -> f64 {
    x.dot(y) - u.dot(x) * u.dot(y)
}

fn gap_violated(u: &Vector, x: &Vector, y: &Vector, tol: f64) -> bool {
    bilinear_gap(u, x, y) < -tol * (x.norm() * y.norm()).max(f64::MIN_POSITIVE)
}

/// Hyperplane test for the orthant: `P_H` is isotone iff `u_i u_j <= 0` for
/// all `i != j`. The witness of a refutation is `(e_i, e_j)`, on which the
/// bilinear gap is `-u_i u_j < 0`.
pub fn hyperplane_isotone_orthant(u: &Vector, tol: f64) -> Result<Certificate> {
    let u = unit_normal(u)?;
    let m = u.dim();
    for i in 0..m {
        for j in i + 1..m {
            if u[i] * u[j] > tol {
                return Ok(Certificate::refuted(
                    Method::ClosedForm,
                    (Vector::unit(m, i), Vector::unit(m, j)),
                ));
            }
        }
    }
    Ok(Certificate::proven(Method::ClosedForm))
}

/// The pair `(z, 1)`, `(-z, 1)` with `z` a unit vector orthogonal to the
/// spatial part of `u`. Both lie on the boundary of the Lorentz cone and
/// their bilinear gap is `-(u_last)^2` for unit `u`.
pub fn lorentz_probe_pair(u: &Vector) -> Result<(Vector, Vector)> {
    let m = u
        .dim()
        .checked_sub(1)
        .filter(|&m| m > 1)
        .ok_or(Error::LorentzTooSmall(u.dim()))?;
    let spatial = u.slice(0, m);
    let z = if spatial.norm() > 0.0 {
        orthonormal_complement(&spatial).swap_remove(0)
    } else {
        Vector::unit(m, 0)
    };
    let lift = |v: &Vector| {
        let mut e = v.as_slice().to_vec();
        e.push(1.0);
        Vector::from_raw(e)
    };
    Ok((lift(&z), lift(&-&z)))
}

/// Hyperplane test for `Lorentz{m+1}` with `m > 1`: `P_H` is isotone iff the
/// last coordinate of the normal vanishes.
pub fn hyperplane_isotone_lorentz(u: &Vector, tol: f64) -> Result<Certificate> {
    if u.dim() < 3 {
        return Err(Error::LorentzTooSmall(u.dim()));
    }
    let u = unit_normal(u)?;
    if u[u.dim() - 1].abs() <= tol {
        Ok(Certificate::proven(Method::ClosedForm))
    } else {
        Ok(Certificate::refuted(Method::ClosedForm, lorentz_probe_pair(&u)?))
    }
}

/// Evaluates the bilinear gap on every pair of generators of a polyhedral
/// self-dual cone. Nonnegativity there extends to all conic combinations.
pub fn hyperplane_isotone_bilinear(generators: &[Vector], u: &Vector, tol: f64) -> Result<Certificate> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let u = unit_normal(u)?;
    for g in generators {
        check_dims(u.dim(), g.dim())?;
    }
    for (i, x) in generators.iter().enumerate() {
        for y in &generators[i..] {
            if gap_violated(&u, x, y, tol) {
                return Ok(Certificate::refuted(Method::GeneratorPairs, (x.clone(), y.clone())));
            }
        }
    }
    Ok(Certificate::proven(Method::GeneratorPairs))
}

/// Deterministic adversarial members of `K` used ahead of random draws:
/// generators of polyhedral parts and the boundary pairs built from the
/// normal for Lorentz parts, each embedded in the full space.
fn probe_rays(k: &ConeSpec, u: &Vector) -> Vec<Vector> {
    let parts: Vec<&ConeSpec> = match k {
        ConeSpec::Product { parts } => parts.iter().collect(),
        other => vec![other],
    };
    let total = k.dim();
    let mut rays = Vec::new();
    let mut offset = 0;
    for part in parts {
        let d = part.dim();
        let local: Vec<Vector> = match part.generators() {
            Some(g) => g,
            None => {
                let slice = u.slice(offset, d);
                let mut v = Vec::new();
                if let Ok((a, b)) = lorentz_probe_pair(&slice) {
                    v.push(a);
                    v.push(b);
                }
                if let Some(dir) = slice.slice(0, d - 1).normalized() {
                    for s in [1.0, -1.0] {
                        let mut e = dir.scale(s).into_inner();
                        e.push(1.0);
                        v.push(Vector::from_raw(e));
                    }
                }
                v
            }
        };
        for r in local {
            let mut e = vec![0.0; total];
            e[offset..offset + d].copy_from_slice(r.as_slice());
            rays.push(Vector::from_raw(e));
        }
        offset += d;
    }
    rays
}

/// Monte-Carlo falsifier for isotonicity of `P_H`, `H = {<u, x> = 0}`.
///
/// Probe pairs from [`probe_rays`] run first, then `n` random pairs from the
/// cone sampler. `n = 0` is vacuous and evaluates nothing.
pub fn hyperplane_isotone_sampled(k: &ConeSpec, u: &Vector, n: usize, seed: u64, tol: f64) -> Result<Certificate> {
    check_dims(k.dim(), u.dim())?;
    let u = unit_normal(u)?;
    if n == 0 {
        return Ok(Certificate::no_counterexample(0, seed));
    }
    let mut used = 0;
    let probes = probe_rays(k, &u);
    for (i, x) in probes.iter().enumerate() {
        for y in &probes[i..] {
            used += 1;
            if gap_violated(&u, x, y, tol) {
                return Ok(Certificate::refuted(Method::Sampled, (x.clone(), y.clone())).sampled(used, seed));
            }
        }
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..n {
        let x = k.sample_point(&mut rng);
        let y = k.sample_point(&mut rng);
        used += 1;
        if gap_violated(&u, &x, &y, tol) {
            return Ok(Certificate::refuted(Method::Sampled, (x, y)).sampled(used, seed));
        }
    }
    Ok(Certificate::no_counterexample(used, seed))
}

/// Hyperplane test using the strongest method available for `k`.
pub fn hyperplane_isotone(k: &ConeSpec, u: &Vector, seed: u64, tol: f64) -> Result<Certificate> {
    check_dims(k.dim(), u.dim())?;
    match k {
        ConeSpec::Orthant { .. } => hyperplane_isotone_orthant(u, tol),
        ConeSpec::Lorentz { dim } if *dim >= 3 => hyperplane_isotone_lorentz(u, tol),
        _ => match k.generators() {
            Some(g) => hyperplane_isotone_bilinear(&g, u, tol),
            None => hyperplane_isotone_sampled(k, u, DEFAULT_SAMPLES, seed, tol),
        },
    }
}

fn orthonormalize(basis: &[Vector]) -> Result<Vec<Vector>> {
    let mut out: Vec<Vector> = Vec::with_capacity(basis.len());
    for b in basis {
        let mut v = b.clone();
        for q in &out {
            v = v.axpy(-v.dot(q), q);
        }
        // second pass for stability
        for q in &out {
            v = v.axpy(-v.dot(q), q);
        }
        if v.norm() <= 1e-10 * b.norm().max(1.0) {
            return Err(Error::DependentBasis);
        }
        out.push(v.normalized().expect("nonzero after check"));
    }
    Ok(out)
}

/// Falsifier for `P_K(S) ⊂ S`, `S = span(basis)`. A linear subspace is
/// invariant under meet/join exactly when this inclusion holds.
///
/// The basis vectors and their negatives are probed before `n` random
/// combinations. The witness is `(s, P_K(s))`.
pub fn subspace_invariant(k: &ConeSpec, basis: &[Vector], n: usize, seed: u64, tol: f64) -> Result<Certificate> {
    if basis.is_empty() {
        return Err(Error::InvalidParameter("empty basis".into()));
    }
    for b in basis {
        check_dims(k.dim(), b.dim())?;
    }
    let frame = orthonormalize(basis)?;
    let off_span = |v: &Vector| {
        let mut r = v.clone();
        for q in &frame {
            r = r.axpy(-r.dot(q), q);
        }
        r.norm()
    };
    let mut rng = rng_from_seed(seed);
    let probes = basis.iter().flat_map(|b| [b.clone(), -b]);
    let random = (0..n).map(|_| {
        let c = sampling::gaussian(frame.len(), &mut rng);
        frame
            .iter()
            .enumerate()
            .fold(Vector::zeros(k.dim()), |acc, (i, q)| acc.axpy(c[i], q))
    });
    let mut used = 0;
    for s in probes.collect::<Vec<_>>().into_iter().chain(random) {
        used += 1;
        let p = k.project(&s)?;
        if off_span(&p) > tol * s.norm().max(1.0) {
            return Ok(Certificate::refuted(Method::Sampled, (s, p)).sampled(used, seed));
        }
    }
    Ok(Certificate::no_counterexample(used, seed))
}

/// How each facet hyperplane of a polyhedron is tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FacetMethod {
    /// Closed form where one exists, generator pairs for polyhedral cones,
    /// sampling otherwise.
    Auto,
    ClosedForm,
    Bilinear,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyOptions {
    pub method: FacetMethod,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            method: FacetMethod::Auto,
            samples: DEFAULT_SAMPLES,
            seed: 42,
            tol: DEFAULT_TOL,
        }
    }
}

/// Certificate for one facet hyperplane, by the method in `opts`.
pub fn certify_hyperplane(k: &ConeSpec, u: &Vector, opts: &CertifyOptions) -> Result<Certificate> {
    check_dims(k.dim(), u.dim())?;
    match opts.method {
        FacetMethod::Auto => hyperplane_isotone(k, u, opts.seed, opts.tol),
        FacetMethod::ClosedForm => match k {
            ConeSpec::Orthant { .. } => hyperplane_isotone_orthant(u, opts.tol),
            ConeSpec::Lorentz { .. } => hyperplane_isotone_lorentz(u, opts.tol),
            _ => Err(Error::Unsupported(format!(
                "closed-form hyperplane test for {}",
                k.name()
            ))),
        },
        FacetMethod::Bilinear => {
            let g = k
                .generators()
                .ok_or_else(|| Error::Unsupported(format!("generator-pair test for {}", k.name())))?;
            hyperplane_isotone_bilinear(&g, u, opts.tol)
        }
        FacetMethod::Sampled => hyperplane_isotone_sampled(k, u, opts.samples, opts.seed, opts.tol),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FacetCertificate {
    pub facet: usize,
    pub certificate: Certificate,
}

/// Per-facet certificates and the overall verdicts for a polyhedron.
///
/// `invariant` and `isotone` always agree: with a sharp representation the
/// two properties are equivalent to every facet hyperplane passing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyhedronReport {
    pub per_facet: Vec<FacetCertificate>,
    pub invariant: Verdict,
    pub isotone: Verdict,
    pub sharp_declared: bool,
}

/// Runs the facet test on each halfspace normal. Offsets do not matter since
/// translates of invariant sets are invariant.
pub fn certify_polyhedron(k: &ConeSpec, p: &Polyhedron, opts: &CertifyOptions) -> Result<PolyhedronReport> {
    if p.is_empty() {
        return Err(Error::EmptyFacets);
    }
    check_dims(k.dim(), p.dim())?;
    let per_facet = p
        .halfspaces
        .iter()
        .enumerate()
        .map(|(facet, h)| {
            Ok(FacetCertificate {
                facet,
                certificate: certify_hyperplane(k, &h.u, opts)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let verdict = if per_facet.iter().any(|f| f.certificate.is_refuted()) {
        Verdict::Refuted
    } else if per_facet.iter().all(|f| f.certificate.verdict == Verdict::Proven) {
        Verdict::Proven
    } else {
        Verdict::NoCounterexample
    };
    Ok(PolyhedronReport {
        per_facet,
        invariant: verdict,
        isotone: verdict,
        sharp_declared: p.sharp,
    })
}

/// Falsifier for invariance of a set `M` under meet and join.
///
/// Draws `n` pairs from `sampler`; each point must satisfy `member`, otherwise
/// the call fails with [`Error::SamplerNonMember`]. Returns `Refuted` with the
/// pair on the first meet or join that leaves `M`.
pub fn falsify_invariance<M, S>(k: &ConeSpec, member: M, mut sampler: S, n: usize, seed: u64) -> Result<Certificate>
where
    M: Fn(&Vector) -> bool,
    S: FnMut(&mut SeededRng) -> Result<Vector>,
{
    falsify_closure(&member, &mut sampler, n, seed, |x, y| {
        Ok((meet(k, x, y)?, join(k, x, y)?))
    })
}

fn falsify_closure<M, S, Op>(member: &M, sampler: &mut S, n: usize, seed: u64, op: Op) -> Result<Certificate>
where
    M: Fn(&Vector) -> bool,
    S: FnMut(&mut SeededRng) -> Result<Vector>,
    Op: Fn(&Vector, &Vector) -> Result<(Vector, Vector)>,
{
    let mut rng = rng_from_seed(seed);
    let mut draw = |rng: &mut SeededRng| -> Result<Vector> {
        let x = sampler(rng)?;
        if member(&x) {
            Ok(x)
        } else {
            Err(Error::SamplerNonMember(x.into_inner()))
        }
    };
    for i in 0..n {
        let x = draw(&mut rng)?;
        let y = draw(&mut rng)?;
        let (lo, hi) = op(&x, &y)?;
        if !member(&lo) || !member(&hi) {
            return Ok(Certificate::refuted(Method::Sampled, (x, y)).sampled(i + 1, seed));
        }
    }
    Ok(Certificate::no_counterexample(n, seed))
}

/// Falsifier for isotonicity of `projector` on ordered pairs `x <=_K y`.
pub fn falsify_isotonicity<P, S>(
    k: &ConeSpec,
    mut projector: P,
    mut sampler: S,
    n: usize,
    seed: u64,
    tol: f64,
) -> Result<Certificate>
where
    P: FnMut(&Vector) -> Result<Vector>,
    S: FnMut(&mut SeededRng) -> Result<(Vector, Vector)>,
{
    let mut rng = rng_from_seed(seed);
    for i in 0..n {
        let (x, y) = sampler(&mut rng)?;
        let px = projector(&x)?;
        let py = projector(&y)?;
        if !k.leq(&px, &py, tol)? {
            return Ok(Certificate::refuted(Method::Sampled, (x, y)).sampled(i + 1, seed));
        }
    }
    Ok(Certificate::no_counterexample(n, seed))
}

/// Sublattice falsifier for the coordinatewise order, using componentwise
/// min and max directly.
pub fn sublattice_check_orthant<M, S>(member: M, mut sampler: S, n: usize, seed: u64) -> Result<Certificate>
where
    M: Fn(&Vector) -> bool,
    S: FnMut(&mut SeededRng) -> Result<Vector>,
{
    falsify_closure(&member, &mut sampler, n, seed, |x, y| {
        check_dims(x.dim(), y.dim())?;
        Ok((x.zip_map(y, f64::min), x.zip_map(y, f64::max)))
    })
}

/// Points of a polyhedron: Gaussian draws around `center` with spread
/// `scale`, projected onto the set, so faces are hit regularly.
pub fn polyhedron_sampler<'a>(
    p: &'a Polyhedron,
    center: Vector,
    scale: f64,
    tol: f64,
) -> impl FnMut(&mut SeededRng) -> Result<Vector> + 'a {
    move |rng| {
        let z = center.axpy(scale, &sampling::gaussian(center.dim(), rng));
        p.project(&z, tol, crate::sets::DEFAULT_MAX_ITER)
    }
}

/// Points of a hyperplane: projected Gaussian draws around `center`.
pub fn hyperplane_sampler<'a>(
    h: &'a Hyperplane,
    center: Vector,
    scale: f64,
) -> impl FnMut(&mut SeededRng) -> Result<Vector> + 'a {
    move |rng| h.project(&center.axpy(scale, &sampling::gaussian(center.dim(), rng)))
}

/// Points of a halfspace; about half land on the boundary.
pub fn halfspace_sampler<'a>(
    h: &'a Halfspace,
    center: Vector,
    scale: f64,
) -> impl FnMut(&mut SeededRng) -> Result<Vector> + 'a {
    move |rng| h.project(&center.axpy(scale, &sampling::gaussian(center.dim(), rng)))
}

/// Ordered pairs `(x, x + d)` with `x` from `base` and `d` a cone member
/// scaled by a uniform factor in `[0, spread]`.
pub fn ordered_pair_sampler<'a, S>(
    k: &'a ConeSpec,
    mut base: S,
    spread: f64,
) -> impl FnMut(&mut SeededRng) -> Result<(Vector, Vector)> + 'a
where
    S: FnMut(&mut SeededRng) -> Result<Vector> + 'a,
{
    move |rng| {
        let x = base(rng)?;
        let s: f64 = rng.random_range(0.0..=spread);
        let d = k.sample_point(rng).scale(s);
        let y = &x + &d;
        Ok((x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(d: usize) -> ConeSpec {
        ConeSpec::orthant(d).unwrap()
    }

    fn l(d: usize) -> ConeSpec {
        ConeSpec::lorentz(d).unwrap()
    }

    #[test]
    fn orthant_closed_form_examples() {
        let c = hyperplane_isotone_orthant(&vector![1, -1], 1e-9).unwrap();
        assert_eq!((c.verdict, c.method), (Verdict::Proven, Method::ClosedForm));
        let c = hyperplane_isotone_orthant(&vector![1, 1], 1e-9).unwrap();
        assert_eq!(c.verdict, Verdict::Refuted);
        assert_eq!(c.witness, Some((vector![1, 0], vector![0, 1])));
        let c = hyperplane_isotone_orthant(&vector![0, 0, 5], 1e-9).unwrap();
        assert_eq!(c.verdict, Verdict::Proven);
        assert_eq!(hyperplane_isotone_orthant(&vector![0, 0], 1e-9), Err(Error::ZeroNormal));
    }

    #[test]
    fn lorentz_closed_form_examples() {
        assert_eq!(
            hyperplane_isotone_lorentz(&vector![1, 2, 0], 1e-9).unwrap().verdict,
            Verdict::Proven
        );
        let c = hyperplane_isotone_lorentz(&vector![0, 0, 1], 1e-9).unwrap();
        assert_eq!(c.verdict, Verdict::Refuted);
        let (x, y) = c.witness.unwrap();
        let k = l(3);
        assert!(k.contains(&x, 1e-12).unwrap() && k.contains(&y, 1e-12).unwrap());
        assert!((bilinear_gap(&vector![0, 0, 1], &x, &y) + 1.0).abs() < 1e-12);
        assert_eq!(
            hyperplane_isotone_lorentz(&vector![3, 4, 1e-15], 1e-9).unwrap().verdict,
            Verdict::Proven
        );
        assert_eq!(
            hyperplane_isotone_lorentz(&vector![1, 1], 1e-9),
            Err(Error::LorentzTooSmall(2))
        );
        assert_eq!(
            hyperplane_isotone_lorentz(&vector![0, 0, 0], 1e-9),
            Err(Error::ZeroNormal)
        );
    }

    #[test]
    fn lorentz_witness_has_gap_minus_last_squared() {
        let u = vector![0.3, -1.2, 0.7, 0.5];
        let unit = u.normalized().unwrap();
        let (x, y) = lorentz_probe_pair(&unit).unwrap();
        let expect = -unit[3] * unit[3];
        assert!((bilinear_gap(&unit, &x, &y) - expect).abs() < 1e-12);
    }

    #[test]
    fn bilinear_examples() {
        let gens = vec![vector![1, 0], vector![0, 1]];
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let c = hyperplane_isotone_bilinear(&gens, &vector![s, -s], 1e-9).unwrap();
        assert_eq!((c.verdict, c.method), (Verdict::Proven, Method::GeneratorPairs));
        let c = hyperplane_isotone_bilinear(&gens, &vector![s, s], 1e-9).unwrap();
        assert_eq!(c.verdict, Verdict::Refuted);
        assert_eq!(c.witness, Some((vector![1, 0], vector![0, 1])));
        assert!((bilinear_gap(&vector![s, s], &gens[0], &gens[1]) + 0.5).abs() < 1e-15);
        for g in &gens {
            let u = g.normalized().unwrap();
            assert!(bilinear_gap(&u, g, g) >= 0.0);
        }
        assert_eq!(
            hyperplane_isotone_bilinear(&[], &vector![1, 0], 1e-9),
            Err(Error::EmptyGenerators)
        );
    }

    #[test]
    fn sampled_examples() {
        let c = hyperplane_isotone_sampled(&l(3), &vector![0, 0, 1], 1000, 3, 1e-9).unwrap();
        assert_eq!((c.verdict, c.method), (Verdict::Refuted, Method::Sampled));
        let c = hyperplane_isotone_sampled(&o(2), &vector![1, -1], 1000, 3, 1e-9).unwrap();
        assert_eq!(c.verdict, Verdict::NoCounterexample);
        assert_eq!(c.seed, Some(3));
        let c = hyperplane_isotone_sampled(&l(3), &vector![0, 0, 1], 0, 3, 1e-9).unwrap();
        assert_eq!((c.verdict, c.samples_used), (Verdict::NoCounterexample, 0));
    }

    #[test]
    fn subspace_examples() {
        let basis = vec![vector![1, 0, 0], vector![0, 1, 0]];
        let c = subspace_invariant(&o(3), &basis, 200, 1, 1e-9).unwrap();
        assert_eq!(c.verdict, Verdict::NoCounterexample);

        let c = subspace_invariant(&o(2), &[vector![1, -1]], 10, 1, 1e-9).unwrap();
        assert_eq!(c.verdict, Verdict::Refuted);
        let (s, p) = c.witness.unwrap();
        assert_eq!(p, o(2).project(&s).unwrap());

        let full = vec![vector![1, 1], vector![1, -1]];
        let c = subspace_invariant(&l(2), &full, 100, 1, 1e-9).unwrap();
        assert_eq!(c.verdict, Verdict::NoCounterexample);

        assert_eq!(
            subspace_invariant(&o(2), &[vector![1, 1], vector![2, 2]], 10, 1, 1e-9),
            Err(Error::DependentBasis)
        );
    }

    fn unit_box() -> Polyhedron {
        Polyhedron::axis_box(&vector![0, 0], &vector![1, 1]).unwrap()
    }

    #[test]
    fn polyhedron_examples() {
        let opts = CertifyOptions::default();
        let r = certify_polyhedron(&o(2), &unit_box(), &opts).unwrap();
        assert_eq!(r.per_facet.len(), 4);
        assert!(r.per_facet.iter().all(|f| f.certificate.verdict == Verdict::Proven));
        assert_eq!((r.invariant, r.isotone), (Verdict::Proven, Verdict::Proven));

        let tri = Polyhedron::new(
            vec![
                Halfspace::new(vector![1, 1], 1.0).unwrap(),
                Halfspace::new(vector![-1, 0], 0.0).unwrap(),
                Halfspace::new(vector![0, -1], 0.0).unwrap(),
            ],
            true,
        )
        .unwrap();
        let r = certify_polyhedron(&o(2), &tri, &opts).unwrap();
        assert_eq!(r.per_facet[0].certificate.verdict, Verdict::Refuted);
        assert_eq!((r.invariant, r.isotone), (Verdict::Refuted, Verdict::Refuted));

        let cyl = Polyhedron::new(
            vec![
                Halfspace::new(vector![1, 0, 0], 1.0).unwrap(),
                Halfspace::new(vector![-1, 0, 0], 1.0).unwrap(),
                Halfspace::new(vector![0, 1, 0], 1.0).unwrap(),
                Halfspace::new(vector![0, -1, 0], 1.0).unwrap(),
            ],
            true,
        )
        .unwrap();
        let r = certify_polyhedron(&l(3), &cyl, &opts).unwrap();
        assert_eq!(r.invariant, Verdict::Proven);

        assert!(certify_polyhedron(&l(3), &unit_box(), &opts).is_err());
    }

    #[test]
    fn method_selection() {
        let rot = ConeSpec::RotatedOrthant {
            q: crate::cone::Rotation::random(3, &mut rng_from_seed(5)),
        };
        let opts = CertifyOptions {
            method: FacetMethod::ClosedForm,
            ..Default::default()
        };
        assert!(matches!(
            certify_hyperplane(&rot, &vector![1, 0, 0], &opts),
            Err(Error::Unsupported(_))
        ));
        let c = certify_hyperplane(&rot, &vector![1, 0, 0], &CertifyOptions::default()).unwrap();
        assert_eq!(c.method, Method::GeneratorPairs);
        let mixed = ConeSpec::product(vec![o(1), l(3)]).unwrap();
        let c = certify_hyperplane(&mixed, &vector![0, 1, 0, 0], &CertifyOptions::default()).unwrap();
        assert_eq!(c.method, Method::Sampled);
        let c = certify_hyperplane(&mixed, &vector![0, 0, 0, 1], &CertifyOptions::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Refuted);
    }

    #[test]
    fn invariance_examples() {
        let k = o(2);
        let diag = Hyperplane::new(vector![1, -1], 0.0).unwrap();
        let c = falsify_invariance(
            &k,
            |x: &Vector| diag.contains(x, 1e-9),
            hyperplane_sampler(&diag, vector![0, 0], 2.0),
            500,
            1,
        )
        .unwrap();
        assert_eq!(c.verdict, Verdict::NoCounterexample);

        let disk = |x: &Vector| x.norm() <= 1.0 + 1e-12;
        let mut probes = vec![vector![1, 0], vector![0, 1]].into_iter();
        let c = falsify_invariance(&k, disk, |_: &mut SeededRng| Ok(probes.next().unwrap()), 1, 1).unwrap();
        assert_eq!(c.verdict, Verdict::Refuted);
        assert_eq!(c.witness, Some((vector![1, 0], vector![0, 1])));

        let disk_sampler = |rng: &mut SeededRng| {
            let v = sampling::gaussian(2, rng);
            Ok(if v.norm() > 1.0 { v.normalized().unwrap() } else { v })
        };
        let c = falsify_invariance(&k, disk, disk_sampler, 500, 2).unwrap();
        assert_eq!(c.verdict, Verdict::Refuted);

        let l3 = l(3);
        let cylinder = |x: &Vector| x[0] * x[0] + x[1] * x[1] <= 1.0 + 1e-9;
        let cyl_sampler = |rng: &mut SeededRng| {
            let v = sampling::gaussian(2, rng);
            let v = if v.norm() > 1.0 { v.normalized().unwrap() } else { v };
            let t: f64 = rng.random_range(-3.0..3.0);
            Ok(vector![v[0], v[1], t])
        };
        let c = falsify_invariance(&l3, cylinder, cyl_sampler, 2000, 3).unwrap();
        assert_eq!(c.verdict, Verdict::NoCounterexample);
    }

    #[test]
    fn non_member_sample_is_an_input_error() {
        let err = falsify_invariance(
            &o(1),
            |x: &Vector| x[0] >= 0.0,
            |_: &mut SeededRng| Ok(vector![-1]),
            1,
            0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::SamplerNonMember(_)));
    }

    #[test]
    fn isotonicity_examples() {
        let k = o(2);
        let boxed = unit_box();
        let base = |rng: &mut SeededRng| Ok(sampling::gaussian(2, rng).scale(1.5));
        let proj = |x: &Vector| crate::sets::project_box(&vector![0, 0], &vector![1, 1], x);
        let c = falsify_isotonicity(&k, proj, ordered_pair_sampler(&k, base, 2.0), 2000, 4, 1e-9).unwrap();
        assert_eq!(c.verdict, Verdict::NoCounterexample);
        let _ = boxed;

        let half = Halfspace::new(vector![1, 1], 1.0).unwrap();
        let mut pairs = std::iter::once((vector![1, 0], vector![1, 1]));
        let c = falsify_isotonicity(
            &k,
            |x: &Vector| half.project(x),
            |_: &mut SeededRng| Ok(pairs.next().unwrap()),
            1,
            0,
            1e-9,
        )
        .unwrap();
        assert_eq!(c.verdict, Verdict::Refuted);
        assert!(half.project(&vector![1, 1]).unwrap().dist(&vector![0.5, 0.5]) < 1e-15);

        let c = falsify_isotonicity(
            &k,
            |x: &Vector| Ok(x.clone()),
            ordered_pair_sampler(&k, base, 1.0),
            500,
            5,
            0.0,
        )
        .unwrap();
        assert_eq!(c.verdict, Verdict::NoCounterexample);
    }

    #[test]
    fn sublattice_examples() {
        let below = |x: &Vector| x[0] <= x[1];
        let sampler = |rng: &mut SeededRng| {
            let v = sampling::gaussian(2, rng);
            Ok(if v[0] <= v[1] { v } else { vector![v[1], v[0]] })
        };
        let c = sublattice_check_orthant(below, sampler, 1000, 1).unwrap();
        assert_eq!(c.verdict, Verdict::NoCounterexample);

        let ball = |x: &Vector| x.norm() <= 1.0 + 1e-12;
        let mut probes = vec![vector![1, 0], vector![0, 1]].into_iter();
        let c = sublattice_check_orthant(ball, |_: &mut SeededRng| Ok(probes.next().unwrap()), 1, 1).unwrap();
        assert_eq!(c.verdict, Verdict::Refuted);

        let point = vector![0.5, -2];
        let c =
            sublattice_check_orthant(|x: &Vector| *x == point, |_: &mut SeededRng| Ok(point.clone()), 50, 1).unwrap();
        assert_eq!(c.verdict, Verdict::NoCounterexample);
    }
}
