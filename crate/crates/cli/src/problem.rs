use std::collections::BTreeMap;
use std::path::Path;

use conelattice::sets::DEFAULT_MAX_ITER;
use conelattice::vi::AffineMap;
use conelattice::{ConeSpec, Hyperplane, Polyhedron, Vector};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// One JSON problem file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub cone: ConeSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polyhedron: Option<Polyhedron>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperplane: Option<Hyperplane>,
    #[serde(default)]
    pub points: BTreeMap<String, Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vi: Option<ViSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainChoice {
    Cone,
    Polyhedron,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViMode {
    #[default]
    Vi,
    Ncp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViSpec {
    pub domain: DomainChoice,
    #[serde(default)]
    pub mode: ViMode,
    pub map: MapSpec,
    pub step: f64,
    pub x0: Vector,
    #[serde(default = "default_vi_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
}

fn default_vi_tol() -> f64 {
    1e-8
}

fn default_max_iter() -> usize {
    DEFAULT_MAX_ITER
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MapSpec {
    /// `F(x) = matrix x + offset`
    Affine {
        matrix: Vec<Vec<f64>>,
        offset: Vector,
    },
    Zero,
}

impl ProblemFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: ProblemFile = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
        file.check_dimensions()?;
        Ok(file)
    }

    fn check_dimensions(&self) -> Result<(), CliError> {
        let m = self.cone.dim();
        let mismatch = |what: &str, got: usize| {
            if got == m {
                Ok(())
            } else {
                Err(CliError::Dimension(format!("{what} has dimension {got}, cone has {m}")))
            }
        };
        if let Some(p) = &self.polyhedron {
            mismatch("polyhedron", p.dim())?;
        }
        if let Some(h) = &self.hyperplane {
            mismatch("hyperplane", h.dim())?;
        }
        for (name, v) in &self.points {
            mismatch(&format!("point '{name}'"), v.dim())?;
        }
        if let Some(vi) = &self.vi {
            mismatch("vi.x0", vi.x0.dim())?;
            if let MapSpec::Affine { matrix, offset } = &vi.map {
                mismatch("vi.map.offset", offset.dim())?;
                mismatch("vi.map.matrix", matrix.len())?;
                for row in matrix {
                    mismatch("vi.map.matrix row", row.len())?;
                }
            }
            if vi.domain == DomainChoice::Polyhedron && self.polyhedron.is_none() {
                return Err(CliError::Schema(
                    "vi.domain is 'polyhedron' but no polyhedron is given".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn point(&self, name: &str) -> Result<&Vector, CliError> {
        self.points
            .get(name)
            .ok_or_else(|| CliError::Schema(format!("no point named '{name}'")))
    }

    pub fn polyhedron(&self) -> Result<&Polyhedron, CliError> {
        self.polyhedron
            .as_ref()
            .ok_or_else(|| CliError::Schema("file has no polyhedron".into()))
    }

    pub fn hyperplane(&self) -> Result<&Hyperplane, CliError> {
        self.hyperplane
            .as_ref()
            .ok_or_else(|| CliError::Schema("file has no hyperplane".into()))
    }
}

impl MapSpec {
    pub fn to_affine(&self, dim: usize) -> Result<AffineMap, CliError> {
        match self {
            MapSpec::Affine { matrix, offset } => Ok(AffineMap::new(matrix.clone(), offset.clone())?),
            MapSpec::Zero => Ok(AffineMap::new(vec![vec![0.0; dim]; dim], Vector::zeros(dim))?),
        }
    }
}
