//! Randomized property suite for the cone projections and the lattice
//! operations.
//!
//! Each property is evaluated on seeded random samples and summarized by its
//! worst slack, the smallest value of `bound - observed` over all samples; a
//! negative slack is a failure. Some quantities are only recorded, never
//! asserted (the empirical Lipschitz constant of meet/join).

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cone::{ConeSpec, Rotation};
use crate::error::Result;
use crate::lattice::{self, Rectangle};
use crate::sampling::{self, rng_from_seed, SeededRng};
use crate::vector::Vector;

/// Tolerance for the lattice identities.
pub const LATTICE_TOL: f64 = 1e-8;
/// Tolerance for projection, Moreau and orthogonality identities.
pub const TIGHT_TOL: f64 = 1e-9;
/// Lipschitz constant asserted for meet and join (sum of the two projection bounds).
pub const LIPSCHITZ_CONSTANT: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeFamily {
    Orthant,
    Lorentz,
    Rotated,
    Product,
}

impl ConeFamily {
    pub const ALL: [ConeFamily; 4] = [
        ConeFamily::Orthant,
        ConeFamily::Lorentz,
        ConeFamily::Rotated,
        ConeFamily::Product,
    ];

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "orthant" => Some(ConeFamily::Orthant),
            "lorentz" => Some(ConeFamily::Lorentz),
            "rotated" | "rotated_orthant" => Some(ConeFamily::Rotated),
            "product" => Some(ConeFamily::Product),
            _ => None,
        }
    }

    /// A cone of this family in dimension `dim >= 2`. Rotations are drawn from
    /// `seed`; products are `Orthant{1} x Lorentz{dim-1}` (two orthant factors
    /// when `dim = 2`).
    pub fn build(self, dim: usize, seed: u64) -> Result<ConeSpec> {
        match self {
            ConeFamily::Orthant => ConeSpec::orthant(dim),
            ConeFamily::Lorentz => ConeSpec::lorentz(dim),
            ConeFamily::Rotated => Ok(ConeSpec::RotatedOrthant {
                q: Rotation::random(dim, &mut rng_from_seed(seed ^ (dim as u64).wrapping_mul(0x9e37_79b9))),
            }),
            ConeFamily::Product if dim >= 3 => {
                ConeSpec::product(vec![ConeSpec::orthant(1)?, ConeSpec::lorentz(dim - 1)?])
            }
            ConeFamily::Product => ConeSpec::product(vec![ConeSpec::orthant(1)?, ConeSpec::orthant(dim - 1)?]),
        }
    }
}

pub type BinaryOp = fn(&ConeSpec, &Vector, &Vector) -> Result<Vector>;

/// The meet/join under test; swappable so the suite can be checked against
/// deliberately broken implementations.
#[derive(Clone, Copy)]
pub struct LatticeOps {
    pub meet: BinaryOp,
    pub join: BinaryOp,
}

impl Default for LatticeOps {
    fn default() -> Self {
        Self {
            meet: lattice::meet,
            join: lattice::join,
        }
    }
}

fn meet_without_subtraction(k: &ConeSpec, x: &Vector, y: &Vector) -> Result<Vector> {
    k.project(&(x - y))
}

impl LatticeOps {
    /// Meet computed as `P_K(x - y)`, dropping the subtraction from `x`.
    pub fn faulty_meet() -> Self {
        Self {
            meet: meet_without_subtraction,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub cones: Vec<ConeFamily>,
    pub dims: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            cones: vec![ConeFamily::Orthant, ConeFamily::Lorentz],
            dims: (2..=6).collect(),
            samples: 500,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub property: String,
    pub cone: String,
    pub dim: usize,
    pub samples: usize,
    pub worst_slack: f64,
    pub passed: bool,
}

/// A measured quantity that is reported but not asserted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Recorded {
    pub name: String,
    pub cone: String,
    pub dim: usize,
    pub value: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub results: Vec<PropertyResult>,
    pub recorded: Vec<Recorded>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    /// Worst slack of one property across every configuration.
    pub fn worst(&self, property: &str) -> Option<f64> {
        self.results
            .iter()
            .filter(|r| r.property == property)
            .map(|r| r.worst_slack)
            .reduce(f64::min)
    }

    pub fn property_names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = Vec::new();
        for r in &self.results {
            if !names.contains(&r.property.as_str()) {
                names.push(&r.property);
            }
        }
        names
    }
}

/// Accumulates the worst slack of one property.
struct Tally {
    worst: f64,
    count: usize,
}

impl Tally {
    fn new() -> Self {
        Self {
            worst: f64::INFINITY,
            count: 0,
        }
    }

    /// Records `observed <= bound`.
    fn at_most(&mut self, observed: f64, bound: f64) {
        let slack = if observed.is_nan() {
            f64::NEG_INFINITY
        } else {
            bound - observed
        };
        self.worst = self.worst.min(slack);
        self.count += 1;
    }
}

/// Random test point: Gaussian direction with a magnitude spread over two
/// decades.
fn point(dim: usize, rng: &mut SeededRng) -> Vector {
    let s = 10f64.powf(rng.random_range(-1.0..1.0));
    sampling::gaussian(dim, rng).scale(s)
}

/// All properties for one cone, in a fixed order.
pub fn check_cone(k: &ConeSpec, ops: LatticeOps, samples: usize, seed: u64) -> Result<SuiteReport> {
    let dim = k.dim();
    let mut rng = rng_from_seed(seed);
    let mut props: Vec<(&'static str, Tally)> = Vec::new();
    macro_rules! tally {
        ($name:literal) => {{
            match props.iter().position(|(n, _)| *n == $name) {
                Some(i) => &mut props[i].1,
                None => {
                    props.push(($name, Tally::new()));
                    &mut props.last_mut().unwrap().1
                }
            }
        }};
    }
    let meet = ops.meet;
    let join = ops.join;
    let mut lipschitz_best: f64 = 0.0;
    let is_orthant = matches!(k, ConeSpec::Orthant { .. });

    for _ in 0..samples {
        let x = point(dim, &mut rng);
        let y = point(dim, &mut rng);
        let z = point(dim, &mut rng);
        let w = point(dim, &mut rng);
        let kx = k.sample_point(&mut rng);
        let ky = k.sample_point(&mut rng);

        // cone_core
        let mp = k.moreau(&x)?;
        tally!("moreau_reconstruction").at_most(mp.reconstruct().dist(&x), TIGHT_TOL);
        tally!("moreau_orthogonality").at_most(mp.inner().abs(), TIGHT_TOL);
        tally!("moreau_parts_in_cone").at_most(k.violation(&mp.plus)?.max(k.violation(&mp.minus)?), TIGHT_TOL);
        tally!("projection_idempotent").at_most(k.project(&mp.plus)?.dist(&mp.plus), TIGHT_TOL);
        tally!("self_duality").at_most(-kx.dot(&ky), TIGHT_TOL);
        let py = k.project(&y)?;
        tally!("projection_nonexpansive").at_most(mp.plus.dist(&py) - x.dist(&y), TIGHT_TOL);
        tally!("projection_variational").at_most((&mp.plus - &x).dot(&(&mp.plus - &kx)), TIGHT_TOL);
        tally!("projection_zero_on_negative_cone").at_most(k.project(&-&kx)?.norm(), TIGHT_TOL);

        // lattice identities
        let m = meet(k, &x, &y)?;
        let j = join(k, &x, &y)?;
        let m_alt = &y - &k.project(&(&y - &x))?;
        let j_alt = &y + &k.project(&(&x - &y))?;
        tally!("ll_i_two_formulas").at_most(m.dist(&m_alt).max(j.dist(&j_alt)), LATTICE_TOL);

        tally!("ll_ii_commutative").at_most(m.dist(&meet(k, &y, &x)?).max(j.dist(&join(k, &y, &x)?)), LATTICE_TOL);

        let bounds = [
            k.violation(&(&x - &m))?,
            k.violation(&(&y - &m))?,
            k.violation(&(&j - &x))?,
            k.violation(&(&j - &y))?,
        ];
        tally!("ll_iii_iv_bounds").at_most(bounds.iter().copied().fold(f64::MIN, f64::max), LATTICE_TOL);
        let above = &x + &kx;
        let eq = meet(k, &x, &above)?.dist(&x).max(join(k, &x, &above)?.dist(&above));
        tally!("ll_iii_iv_equality_cases").at_most(eq, LATTICE_TOL);

        tally!("ll_v_sum").at_most((&m + &j).dist(&(&x + &y)), TIGHT_TOL);

        let mt = meet(k, &(&x + &z), &(&y + &z))?;
        let jt = join(k, &(&x + &z), &(&y + &z))?;
        tally!("ll_vi_translation").at_most(mt.dist(&(&m + &z)).max(jt.dist(&(&j + &z))), LATTICE_TOL);

        let lambda = 10f64.powf(rng.random_range(-1.0..1.0));
        let ms = meet(k, &x.scale(lambda), &y.scale(lambda))?;
        let js = join(k, &x.scale(lambda), &y.scale(lambda))?;
        tally!("ll_vii_homogeneity").at_most(ms.dist(&m.scale(lambda)).max(js.dist(&j.scale(lambda))), LATTICE_TOL);

        tally!("ll_viii_orthogonality").at_most((&x - &m).dot(&(&j - &x)).abs(), TIGHT_TOL);

        let dual = join(k, &-&x, &-&y)?;
        tally!("ll_ix_duality").at_most(dual.dist(&-&m), LATTICE_TOL);

        let mzw = meet(k, &z, &w)?;
        let jzw = join(k, &z, &w)?;
        let spread = x.dist(&z) + y.dist(&w);
        let worst_move = m.dist(&mzw).max(j.dist(&jzw));
        if spread > 0.0 {
            lipschitz_best = lipschitz_best.max(worst_move / spread);
        }
        tally!("ll_x_lipschitz").at_most(worst_move, LIPSCHITZ_CONSTANT * spread + TIGHT_TOL);

        let lam: f64 = rng.random_range(0.0..=1.0);
        let mu: f64 = rng.random_range(0.0..=1.0);
        let zm = x.scale(lam).axpy(1.0 - lam, &m);
        let wm = y.scale(mu).axpy(1.0 - mu, &m);
        let zj = x.scale(lam).axpy(1.0 - lam, &j);
        let wj = y.scale(mu).axpy(1.0 - mu, &j);
        let seg = meet(k, &zm, &wm)?.dist(&m).max(join(k, &zj, &wj)?.dist(&j));
        tally!("ll_xi_segment_stability").at_most(seg, LATTICE_TOL);

        // complementary pair from a Moreau split: meet is zero, so the inner product is
        let (cx, cy) = (mp.plus.clone(), mp.minus.clone());
        let cm = meet(k, &cx, &cy)?;
        if cm.norm() <= 1e-10 {
            tally!("ll_xii_complementary").at_most(cx.dot(&cy).abs(), LATTICE_TOL);
        } else {
            tally!("ll_xii_complementary").at_most(cm.norm(), 1e-10);
        }

        if !lattice::comparable(k, &x, &y, TIGHT_TOL)? {
            let xp = &x - &m;
            let yp = &y - &m;
            let v = k.violation(&xp)?.max(k.violation(&yp)?);
            tally!("incomparable_translates_in_cone").at_most(v, LATTICE_TOL);
            tally!("incomparable_translates_orthogonal").at_most(xp.dot(&yp).abs(), LATTICE_TOL);

            let rect = Rectangle {
                v_x: x.clone(),
                v_y: y.clone(),
                v_meet: m.clone(),
                v_join: j.clone(),
            };
            tally!("rectangle_identities").at_most(rect.defect(), TIGHT_TOL);
            let u = rect.convex_combination(random_weights(&mut rng));
            let v = rect.convex_combination(random_weights(&mut rng));
            let mu_ = meet(k, &u, &v)?;
            let ju_ = join(k, &u, &v)?;
            let scale = 1.0 + x.norm() + y.norm();
            let inside = rect.contains(&mu_, LATTICE_TOL * scale) && rect.contains(&ju_, LATTICE_TOL * scale);
            tally!("rectangle_closure").at_most(if inside { 0.0 } else { 1.0 }, 0.0);
        }

        // (<x,y> + |x||y|) |a|^2 >= <a,x><a,y>
        let a = &z;
        let lhs = (x.dot(&y) + x.norm() * y.norm()) * a.dot(a);
        tally!("triangle_angle_inequality").at_most(a.dot(&x) * a.dot(&y) - lhs, TIGHT_TOL * (1.0 + lhs.abs()));

        if is_orthant {
            let dev = m.dist(&x.zip_map(&y, f64::min)).max(j.dist(&x.zip_map(&y, f64::max)));
            tally!("orthant_min_max").at_most(dev, 1e-12);
        }
    }

    let cone = k.name();
    let results = props
        .into_iter()
        .map(|(name, t)| PropertyResult {
            property: name.to_string(),
            cone: cone.clone(),
            dim,
            samples: t.count,
            worst_slack: t.worst,
            passed: t.worst >= 0.0,
        })
        .collect();
    Ok(SuiteReport {
        results,
        recorded: vec![Recorded {
            name: "ll_x_empirical_constant".into(),
            cone,
            dim,
            value: lipschitz_best,
        }],
    })
}

fn random_weights(rng: &mut SeededRng) -> [f64; 4] {
    let raw: [f64; 4] = std::array::from_fn(|_| -rng.random_range(f64::EPSILON..1.0f64).ln());
    let total: f64 = raw.iter().sum();
    raw.map(|v| v / total)
}

/// Runs the suite over every requested cone family and dimension, merging
/// results in configuration order. Lorentz and product cones start at
/// dimension 2 like the rest.
pub fn run_suite(config: &SuiteConfig, ops: LatticeOps) -> Result<SuiteReport> {
    let mut report = SuiteReport::default();
    for (fi, family) in config.cones.iter().enumerate() {
        for &dim in &config.dims {
            if dim < 2 {
                continue;
            }
            let cone = family.build(dim, config.seed)?;
            let seed = config.seed.wrapping_add((fi as u64) << 32).wrapping_add(dim as u64);
            let part = check_cone(&cone, ops, config.samples, seed)?;
            report.results.extend(part.results);
            report.recorded.extend(part.recorded);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_configuration_passes() {
        let cfg = SuiteConfig {
            cones: vec![ConeFamily::Orthant],
            dims: vec![2],
            samples: 200,
            seed: 42,
        };
        let report = run_suite(&cfg, LatticeOps::default()).unwrap();
        assert!(report.passed(), "{:#?}", report.failures().collect::<Vec<_>>());
        assert!(report.property_names().contains(&"orthant_min_max"));
    }

    #[test]
    fn faulty_meet_is_caught_by_the_sum_identity() {
        let cfg = SuiteConfig {
            cones: vec![ConeFamily::Orthant],
            dims: vec![2],
            samples: 50,
            seed: 1,
        };
        let report = run_suite(&cfg, LatticeOps::faulty_meet()).unwrap();
        assert!(report.worst("ll_v_sum").unwrap() < 0.0);
    }

    #[test]
    fn families_build_requested_dimension() {
        for f in ConeFamily::ALL {
            for d in 2..=6 {
                assert_eq!(f.build(d, 3).unwrap().dim(), d);
            }
        }
    }
}
