use conelattice::certify::{
    certify_polyhedron, falsify_invariance, falsify_isotonicity, halfspace_sampler, hyperplane_isotone,
    hyperplane_isotone_lorentz, hyperplane_isotone_sampled, hyperplane_sampler, ordered_pair_sampler,
    subspace_invariant, CertifyOptions, FacetMethod,
};
use conelattice::sampling::{gaussian, rng_from_seed, SeededRng};
use conelattice::sets::{project_box_with_cut, DEFAULT_MAX_ITER};
use conelattice::{ConeSpec, Halfspace, Hyperplane, Polyhedron, Vector, Verdict};
use rand::Rng;

fn v(xs: Vec<f64>) -> Vector {
    Vector::new(xs).unwrap()
}

/// Normals mixing generic draws with ones built to be isotone for `k`.
fn test_normal(k: &ConeSpec, i: usize, rng: &mut SeededRng) -> Vector {
    let m = k.dim();
    let mut u = gaussian(m, rng).into_inner();
    if i % 2 == 1 {
        match k {
            ConeSpec::Lorentz { .. } => u[m - 1] = 0.0,
            _ => {
                let a = rng.random_range(0..m);
                let b = (a + rng.random_range(1..m)) % m;
                u = vec![0.0; m];
                u[a] = rng.random_range(0.2..2.0);
                u[b] = -rng.random_range(0.2..2.0);
            }
        }
    }
    v(u)
}

fn cones() -> Vec<ConeSpec> {
    vec![
        ConeSpec::orthant(2).unwrap(),
        ConeSpec::orthant(4).unwrap(),
        ConeSpec::lorentz(3).unwrap(),
        ConeSpec::lorentz(5).unwrap(),
    ]
}

#[test]
fn lorentz_closed_form_never_contradicts_sampling() {
    let mut rng = rng_from_seed(11);
    for i in 0..300 {
        let d = 3 + i % 6;
        let k = ConeSpec::lorentz(d).unwrap();
        let u = test_normal(&k, i, &mut rng);
        let closed = hyperplane_isotone_lorentz(&u, 1e-9).unwrap();
        let sampled = hyperplane_isotone_sampled(&k, &u, 1000, i as u64, 1e-9).unwrap();
        match closed.verdict {
            Verdict::Proven => assert_eq!(sampled.verdict, Verdict::NoCounterexample, "{u}"),
            _ => assert_eq!(sampled.verdict, Verdict::Refuted, "{u}"),
        }
    }
}

#[test]
fn isotone_hyperplanes_are_invariant_subspaces() {
    let mut rng = rng_from_seed(12);
    for k in cones() {
        for i in 0..40 {
            let u = test_normal(&k, i, &mut rng);
            let cert = hyperplane_isotone(&k, &u, 0, 1e-9).unwrap();
            let h = Hyperplane::new(u.clone(), 0.0).unwrap();
            let sub = subspace_invariant(&k, &h.direction_basis(), 500, i as u64, 1e-9).unwrap();
            if cert.verdict == Verdict::Proven {
                assert!(sub.verdict.passed(), "{} {u}", k.name());
            }
            // the converse holds for hyperplanes too
            if sub.verdict.passed() {
                assert!(cert.verdict.passed(), "{} {u}", k.name());
            }
        }
    }
}

#[test]
fn hyperplane_invariance_matches_isotonicity() {
    let mut rng = rng_from_seed(13);
    for k in cones() {
        let m = k.dim();
        let center = Vector::zeros(m);
        for i in 0..200 {
            let u = test_normal(&k, i, &mut rng);
            let h = Hyperplane::new(u, 0.0).unwrap();
            let seed = i as u64;
            let inv = falsify_invariance(
                &k,
                |x| h.contains(x, 1e-9 * (1.0 + x.norm())),
                hyperplane_sampler(&h, center.clone(), 3.0),
                2000,
                seed,
            )
            .unwrap();
            let base = |rng: &mut SeededRng| Ok(gaussian(m, rng).scale(3.0));
            let iso = falsify_isotonicity(
                &k,
                |x| h.project(x),
                ordered_pair_sampler(&k, base, 3.0),
                2000,
                seed,
                1e-9,
            )
            .unwrap();
            assert_eq!(inv.verdict, iso.verdict, "{} {:?}", k.name(), h.u);
        }
    }
}

#[test]
fn halfspace_and_hyperplane_invariance_agree() {
    let mut rng = rng_from_seed(14);
    for k in cones() {
        let m = k.dim();
        for i in 0..100 {
            let u = test_normal(&k, i, &mut rng);
            let b = rng.random_range(-1.0..1.0);
            let h = Hyperplane::new(u.clone(), b).unwrap();
            let lower = h.lower_halfspace();
            let center = gaussian(m, &mut rng);
            let seed = i as u64;
            let on_plane = falsify_invariance(
                &k,
                |x| h.contains(x, 1e-9 * (1.0 + x.norm())),
                hyperplane_sampler(&h, center.clone(), 3.0),
                2000,
                seed,
            )
            .unwrap();
            let below = falsify_invariance(
                &k,
                |x| lower.contains(x, 1e-9 * (1.0 + x.norm())),
                halfspace_sampler(&lower, center, 3.0),
                2000,
                seed,
            )
            .unwrap();
            assert_eq!(on_plane.verdict, below.verdict, "{} {u}", k.name());
        }
    }
}

#[test]
fn faces_of_an_invariant_box_are_invariant() {
    let k = ConeSpec::orthant(3).unwrap();
    let lo = v(vec![-1.0, 0.0, 0.5]);
    let hi = v(vec![1.0, 2.0, 1.5]);
    let boxed = Polyhedron::axis_box(&lo, &hi).unwrap();
    let report = certify_polyhedron(&k, &boxed, &CertifyOptions::default()).unwrap();
    assert_eq!(report.invariant, Verdict::Proven);
    for h in &boxed.halfspaces {
        let facet = h.boundary();
        let member = |x: &Vector| boxed.contains(x, 1e-12) && facet.contains(x, 1e-12);
        let sampler = |rng: &mut SeededRng| {
            let z = boxed.project(&gaussian(3, rng).scale(2.0), 1e-13, DEFAULT_MAX_ITER)?;
            facet.project(&z)
        };
        let cert = falsify_invariance(&k, member, sampler, 3000, 1).unwrap();
        assert_eq!(cert.verdict, Verdict::NoCounterexample, "{:?}", h.u);
    }
}

#[test]
fn certified_polyhedra_have_isotone_projections() {
    let mut rng = rng_from_seed(15);
    let k = ConeSpec::orthant(3).unwrap();
    let lo = v(vec![0.0, 0.0, 0.0]);
    let hi = v(vec![2.0, 1.0, 3.0]);
    for i in 0..4 {
        let mut u = vec![0.0; 3];
        u[i % 3] = 1.0;
        u[(i + 1) % 3] = -rng.random_range(0.5..2.0);
        let cut = Halfspace::new(v(u), 0.5).unwrap();
        let mut p = Polyhedron::axis_box(&lo, &hi).unwrap();
        p.halfspaces.push(cut.clone());
        let report = certify_polyhedron(&k, &p, &CertifyOptions::default()).unwrap();
        assert_eq!(report.isotone, Verdict::Proven);

        let base = |rng: &mut SeededRng| Ok(gaussian(3, rng).scale(2.0));
        let iso = falsify_isotonicity(
            &k,
            |x| project_box_with_cut(&lo, &hi, &cut, x),
            ordered_pair_sampler(&k, base, 2.0),
            10_000,
            i as u64,
            1e-9,
        )
        .unwrap();
        assert_eq!(iso.verdict, Verdict::NoCounterexample);
        // Dykstra agrees on a smaller run
        let base = |rng: &mut SeededRng| Ok(gaussian(3, rng).scale(2.0));
        let iso = falsify_isotonicity(
            &k,
            |x| p.project(x, 1e-12, DEFAULT_MAX_ITER),
            ordered_pair_sampler(&k, base, 2.0),
            1000,
            i as u64,
            1e-8,
        )
        .unwrap();
        assert_eq!(iso.verdict, Verdict::NoCounterexample);
    }
}

#[test]
fn facet_methods_agree_on_polyhedral_cones() {
    let mut rng = rng_from_seed(16);
    let k = ConeSpec::orthant(4).unwrap();
    for i in 0..50 {
        let u = test_normal(&k, i, &mut rng);
        let p = Polyhedron::new(vec![Halfspace::new(u, 1.0).unwrap()], true).unwrap();
        let verdicts: Vec<bool> = [FacetMethod::ClosedForm, FacetMethod::Bilinear, FacetMethod::Sampled]
            .into_iter()
            .map(|method| {
                let opts = CertifyOptions {
                    method,
                    ..CertifyOptions::default()
                };
                certify_polyhedron(&k, &p, &opts).unwrap().invariant.passed()
            })
            .collect();
        assert!(verdicts.iter().all(|&b| b == verdicts[0]), "{verdicts:?}");
    }
}

#[test]
fn certificates_are_reproducible() {
    let k = ConeSpec::product(vec![ConeSpec::orthant(1).unwrap(), ConeSpec::lorentz(3).unwrap()]).unwrap();
    let u = v(vec![0.3, 1.0, -0.5, 0.2]);
    let a = hyperplane_isotone_sampled(&k, &u, 500, 9, 1e-9).unwrap();
    let b = hyperplane_isotone_sampled(&k, &u, 500, 9, 1e-9).unwrap();
    assert_eq!(a, b);
    let text = serde_json::to_string(&a).unwrap();
    assert_eq!(serde_json::from_str::<conelattice::Certificate>(&text).unwrap(), a);
}
