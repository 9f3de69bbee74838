use std::path::Path;

use conelattice::certify::{self, CertifyOptions, FacetMethod};
use conelattice::props::{self, ConeFamily, LatticeOps, SuiteConfig};
use conelattice::sampling::{self, SeededRng};
use conelattice::sets::DEFAULT_MAX_ITER;
use conelattice::vi::{self, Domain, VIProblem};
use conelattice::{comparable, join, meet, Certificate, MinimalInvariantSet, Rectangle, Vector, Verdict, DEFAULT_TOL};
use serde::{Deserialize, Serialize};

use crate::output::{self, num, vec};
use crate::problem::{DomainChoice, ProblemFile, ViMode};
use crate::{CliError, Common, FalsifyProperty, Fault, MethodArg, ProjectTarget, SetTarget};

/// Inner tolerance for Dykstra projections issued by the CLI.
const PROJECTION_TOL: f64 = 1e-13;
/// Floor on the membership/order tolerance in sampled checks of projected points.
const SAMPLED_CHECK_TOL: f64 = 1e-7;

struct Loaded {
    file: ProblemFile,
    seed: u64,
    tol: f64,
}

fn load(common: &Common) -> Result<Loaded, CliError> {
    let file = ProblemFile::load(&common.input)?;
    let seed = common.seed.or(file.seed).unwrap_or(42);
    let tol = common.tol.or(file.tol).unwrap_or(DEFAULT_TOL);
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(CliError::Schema(format!("tolerance must be nonnegative, got {tol}")));
    }
    Ok(Loaded { file, seed, tol })
}

fn verdict_code(v: Verdict) -> u8 {
    if v == Verdict::Refuted {
        1
    } else {
        0
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ProjectOutput {
    pub target: String,
    pub point: Vector,
    pub projection: Vector,
}

pub fn project(common: &Common, point: &str, target: ProjectTarget) -> Result<u8, CliError> {
    let Loaded { file, .. } = load(common)?;
    let x = file.point(point)?;
    let (name, p) = match target {
        ProjectTarget::Cone => ("cone", file.cone.project(x)?),
        ProjectTarget::Polyhedron => (
            "polyhedron",
            file.polyhedron()?.project(x, PROJECTION_TOL, DEFAULT_MAX_ITER)?,
        ),
        ProjectTarget::Hyperplane => ("hyperplane", file.hyperplane()?.project(x)?),
    };
    println!("projection of {point} = {} onto {name}", vec(x));
    println!("  {}", vec(&p));
    let out = ProjectOutput {
        target: name.into(),
        point: x.clone(),
        projection: p,
    };
    output::write_json(common.json.as_deref(), &out)?;
    Ok(0)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MeetJoinOutput {
    pub x: Vector,
    pub y: Vector,
    pub meet: Vector,
    pub join: Vector,
    pub comparable: bool,
    pub rectangle: Option<Rectangle>,
}

pub fn meetjoin(common: &Common, xname: &str, yname: &str) -> Result<u8, CliError> {
    let Loaded { file, tol, .. } = load(common)?;
    let k = &file.cone;
    let x = file.point(xname)?;
    let y = file.point(yname)?;
    let m = meet(k, x, y)?;
    let j = join(k, x, y)?;
    let is_comparable = comparable(k, x, y, tol)?;
    let rectangle = match conelattice::minimal_invariant(k, x, y, tol)? {
        MinimalInvariantSet::Comparable { .. } => None,
        MinimalInvariantSet::Incomparable { rect } => Some(rect),
    };
    println!("meet       {}", vec(&m));
    println!("join       {}", vec(&j));
    println!("comparable {is_comparable}");
    if let Some(r) = &rectangle {
        println!("rectangle vertices:");
        for (label, v) in ["x", "y", "meet", "join"].iter().zip(r.vertices()) {
            println!("  {label:<5} {}", vec(v));
        }
    }
    let out = MeetJoinOutput {
        x: x.clone(),
        y: y.clone(),
        meet: m,
        join: j,
        comparable: is_comparable,
        rectangle,
    };
    output::write_json(common.json.as_deref(), &out)?;
    Ok(0)
}

fn print_certificate(label: &str, c: &Certificate) {
    println!(
        "{label}: {:?} via {:?} (samples {})",
        c.verdict, c.method, c.samples_used
    );
    if let Some((a, b)) = &c.witness {
        println!("  witness {}", vec(a));
        println!("          {}", vec(b));
    }
}

pub fn certify(common: &Common, target: SetTarget, method: MethodArg, n: usize) -> Result<u8, CliError> {
    let Loaded { file, seed, tol } = load(common)?;
    let opts = CertifyOptions {
        method: match method {
            MethodArg::Auto => FacetMethod::Auto,
            MethodArg::Closed => FacetMethod::ClosedForm,
            MethodArg::Bilinear => FacetMethod::Bilinear,
            MethodArg::Sampled => FacetMethod::Sampled,
        },
        samples: n,
        seed,
        tol,
    };
    match target {
        SetTarget::Hyperplane => {
            let h = file.hyperplane()?;
            let c = certify::certify_hyperplane(&file.cone, &h.u, &opts)?;
            print_certificate("hyperplane", &c);
            output::write_json(common.json.as_deref(), &c)?;
            Ok(verdict_code(c.verdict))
        }
        SetTarget::Polyhedron => {
            let p = file.polyhedron()?;
            let report = certify::certify_polyhedron(&file.cone, p, &opts)?;
            for f in &report.per_facet {
                print_certificate(&format!("facet {}", f.facet), &f.certificate);
            }
            println!("invariant: {:?}", report.invariant);
            println!("isotone:   {:?}", report.isotone);
            if !report.sharp_declared {
                println!("note: representation not declared sharp; a refuted facet may be redundant");
            }
            output::write_json(common.json.as_deref(), &report)?;
            Ok(verdict_code(report.invariant))
        }
    }
}

pub fn falsify(
    common: &Common,
    target: SetTarget,
    property: FalsifyProperty,
    n: usize,
    scale: f64,
) -> Result<u8, CliError> {
    let Loaded { file, seed, tol } = load(common)?;
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(CliError::Schema(format!("scale must be positive, got {scale}")));
    }
    let k = &file.cone;
    let check_tol = tol.max(SAMPLED_CHECK_TOL);
    let m = k.dim();
    let cert = match target {
        SetTarget::Polyhedron => {
            let p = file.polyhedron()?;
            let center = p.project(&Vector::zeros(m), PROJECTION_TOL, DEFAULT_MAX_ITER)?;
            match property {
                FalsifyProperty::Invariance => certify::falsify_invariance(
                    k,
                    |x: &Vector| p.contains(x, check_tol),
                    certify::polyhedron_sampler(p, center, scale, PROJECTION_TOL),
                    n,
                    seed,
                )?,
                FalsifyProperty::Isotonicity => {
                    let base = move |rng: &mut SeededRng| Ok(center.axpy(scale, &sampling::gaussian(m, rng)));
                    certify::falsify_isotonicity(
                        k,
                        |x: &Vector| p.project(x, PROJECTION_TOL, DEFAULT_MAX_ITER),
                        certify::ordered_pair_sampler(k, base, scale),
                        n,
                        seed,
                        check_tol,
                    )?
                }
            }
        }
        SetTarget::Hyperplane => {
            let h = file.hyperplane()?;
            let center = h.project(&Vector::zeros(m))?;
            match property {
                FalsifyProperty::Invariance => certify::falsify_invariance(
                    k,
                    |x: &Vector| h.contains(x, check_tol * (1.0 + x.norm())),
                    certify::hyperplane_sampler(h, center, scale),
                    n,
                    seed,
                )?,
                FalsifyProperty::Isotonicity => {
                    let base = move |rng: &mut SeededRng| Ok(center.axpy(scale, &sampling::gaussian(m, rng)));
                    certify::falsify_isotonicity(
                        k,
                        |x: &Vector| h.project(x),
                        certify::ordered_pair_sampler(k, base, scale),
                        n,
                        seed,
                        check_tol,
                    )?
                }
            }
        }
    };
    let label = match property {
        FalsifyProperty::Invariance => "invariance",
        FalsifyProperty::Isotonicity => "isotonicity",
    };
    print_certificate(label, &cert);
    output::write_json(common.json.as_deref(), &cert)?;
    Ok(verdict_code(cert.verdict))
}

fn parse_dims(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Schema(format!("bad --dims '{s}', expected N or A-B"));
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let dims: Vec<usize> = match s.split_once('-') {
        Some((a, b)) => (parse(a)?..=parse(b)?).collect(),
        None => s.split(',').map(parse).collect::<Result<_, _>>()?,
    };
    if dims.is_empty() || dims.iter().any(|&d| d < 2) {
        return Err(bad());
    }
    Ok(dims)
}

fn parse_cones(s: &str) -> Result<Vec<ConeFamily>, CliError> {
    s.split(',')
        .map(|t| ConeFamily::parse(t).ok_or_else(|| CliError::Schema(format!("unknown cone family '{t}'"))))
        .collect()
}

pub fn props(
    cones: &str,
    dims: &str,
    n: usize,
    seed: u64,
    json: Option<&Path>,
    fault: Option<Fault>,
) -> Result<u8, CliError> {
    let config = SuiteConfig {
        cones: parse_cones(cones)?,
        dims: parse_dims(dims)?,
        samples: n,
        seed,
    };
    let ops = match fault {
        None => LatticeOps::default(),
        Some(Fault::MeetNoSubtract) => LatticeOps::faulty_meet(),
    };
    let report = props::run_suite(&config, ops)?;
    for name in report.property_names() {
        let rows: Vec<_> = report.results.iter().filter(|r| r.property == name).collect();
        let worst = rows.iter().map(|r| r.worst_slack).fold(f64::INFINITY, f64::min);
        let pass = rows.iter().all(|r| r.passed);
        println!(
            "{} {name:<36} worst slack {}",
            if pass { "PASS" } else { "FAIL" },
            num(worst)
        );
        for r in rows.iter().filter(|r| !r.passed) {
            println!("       {} dim {}: slack {}", r.cone, r.dim, num(r.worst_slack));
        }
    }
    let lip = report.recorded.iter().map(|r| r.value).fold(0.0, f64::max);
    println!("recorded: largest empirical meet/join Lipschitz ratio {}", num(lip));
    output::write_json(json, &report)?;
    Ok(if report.passed() { 0 } else { 1 })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ViOutput {
    pub final_point: Vector,
    pub residual: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub order_monotone_prefix: usize,
    pub trajectory: vi::Trajectory,
}

pub fn vi(common: &Common, thin: usize) -> Result<u8, CliError> {
    let Loaded { file, .. } = load(common)?;
    let spec = file
        .vi
        .as_ref()
        .ok_or_else(|| CliError::Schema("file has no vi block".into()))?;
    let k = &file.cone;
    let map = spec.map.to_affine(k.dim())?;
    let f = |x: &Vector| map.apply(x);
    let traj = match (spec.mode, spec.domain) {
        (ViMode::Ncp, DomainChoice::Cone) => vi::ncp_solve(k, f, spec.x0.clone(), spec.step, spec.tol, spec.max_iter)?,
        (ViMode::Ncp, DomainChoice::Polyhedron) => {
            return Err(CliError::Schema("ncp mode needs the cone domain".into()));
        }
        (ViMode::Vi, choice) => {
            let domain = match choice {
                DomainChoice::Cone => Domain::Cone { cone: k.clone() },
                DomainChoice::Polyhedron => Domain::Polyhedron {
                    polyhedron: file.polyhedron()?.clone(),
                },
            };
            let p = VIProblem::new(domain, spec.step, spec.x0.clone())?
                .with_tol(spec.tol)
                .with_max_iter(spec.max_iter);
            vi::solve_vi(&p, k, f)?
        }
    };
    let out = ViOutput {
        final_point: traj.last().clone(),
        residual: traj.final_residual(),
        iterations: traj.iterations(),
        converged: traj.converged,
        order_monotone_prefix: traj.order_monotone_prefix,
        trajectory: traj.thinned(thin),
    };
    println!("final point   {}", vec(&out.final_point));
    println!("residual      {}", out.residual.map(num).unwrap_or_else(|| "-".into()));
    println!("iterations    {}", out.iterations);
    println!("converged     {}", out.converged);
    println!("order-monotone prefix {}", out.order_monotone_prefix);
    output::write_json(common.json.as_deref(), &out)?;
    if out.converged {
        Ok(0)
    } else {
        let residuals: Vec<String> = traj.residuals.iter().rev().take(5).rev().map(|&r| num(r)).collect();
        Err(CliError::NonConvergence(format!(
            "{} iterations, last residuals [{}]",
            out.iterations,
            residuals.join(", ")
        )))
    }
}
