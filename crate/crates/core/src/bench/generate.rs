//! Random geometric instances and the instance file format.

use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::Instance;
use crate::objectives::{CostMode, CostSpec, Grid, ObjectiveSpec, SetFunction};
use crate::rng::Rng;

/// Per-edge thickness distribution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum ThicknessModel {
    /// `hi` with probability `p` (default `2/√n`, clamped to `[0, 1]`), else `lo`.
    Bernoulli {
        #[serde(default = "default_hi")]
        hi: f64,
        #[serde(default = "default_lo")]
        lo: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<f64>,
    },
    Uniform {
        #[serde(default)]
        lo: f64,
        #[serde(default = "default_hi")]
        hi: f64,
    },
    Fixed {
        t: f64,
    },
}

fn default_hi() -> f64 {
    7.0
}

fn default_lo() -> f64 {
    1.0
}

impl Default for ThicknessModel {
    fn default() -> Self {
        ThicknessModel::Bernoulli { hi: 7.0, lo: 1.0, p: None }
    }
}

impl ThicknessModel {
    pub fn bernoulli_p(n: usize) -> f64 {
        (2.0 / (n as f64).sqrt()).clamp(0.0, 1.0)
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            ThicknessModel::Bernoulli { hi, lo, p } => {
                hi >= 0.0 && lo >= 0.0 && hi.is_finite() && lo.is_finite() && p.is_none_or(|p| (0.0..=1.0).contains(&p))
            }
            ThicknessModel::Uniform { lo, hi } => lo >= 0.0 && hi >= lo && hi.is_finite(),
            ThicknessModel::Fixed { t } => t >= 0.0 && t.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid thickness model {self:?}")))
        }
    }

    fn draw(&self, n: usize, rng: &mut Rng) -> f64 {
        match *self {
            ThicknessModel::Bernoulli { hi, lo, p } => {
                let p = p.unwrap_or_else(|| Self::bernoulli_p(n));
                if rng.uniform() < p {
                    hi
                } else {
                    lo
                }
            }
            ThicknessModel::Uniform { lo, hi } => lo + (hi - lo) * rng.uniform(),
            ThicknessModel::Fixed { t } => t,
        }
    }
}

/// Reward-minus-cost settings layered on the coverage reward.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostConfig {
    pub beta: f64,
    #[serde(default = "default_mode")]
    pub mode: CostMode,
    #[serde(default)]
    pub top_cost_offset: bool,
}

fn default_mode() -> CostMode {
    CostMode::Raw
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub n: usize,
    #[serde(default)]
    pub directed: bool,
    #[serde(default = "default_side")]
    pub width: f64,
    #[serde(default = "default_side")]
    pub height: f64,
    pub seed: u64,
    #[serde(default)]
    pub thickness: ThicknessModel,
    #[serde(default = "default_h")]
    pub grid_h: f64,
    /// Euclidean edge costs combined with the coverage reward.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost: Option<CostConfig>,
    /// Add each edge's length to the reward.
    #[serde(default)]
    pub length_bonus: bool,
}

fn default_side() -> f64 {
    100.0
}

fn default_h() -> f64 {
    0.5
}

impl GeneratorSpec {
    pub fn new(n: usize, seed: u64, thickness: ThicknessModel) -> Self {
        GeneratorSpec {
            n,
            directed: false,
            width: 100.0,
            height: 100.0,
            seed,
            thickness,
            grid_h: 0.5,
            cost: None,
            length_bonus: false,
        }
    }
}

/// A self-contained problem: vertices, coordinates and the objective.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub directed: bool,
    pub coords: Vec<[f64; 2]>,
    pub objective: ObjectiveSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
}

impl InstanceFile {
    pub fn instance(&self) -> Result<Instance> {
        if self.coords.len() != self.n {
            return Err(Error::InvalidInstance(format!("{} coordinates for n = {}", self.coords.len(), self.n)));
        }
        Instance::with_coords(self.coords.clone(), self.directed)
    }

    pub fn build(&self) -> Result<(Instance, Arc<dyn SetFunction>)> {
        let inst = self.instance()?;
        let f = self.objective.build(&inst)?;
        Ok((inst, f))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Coordinates uniform over the region, then one thickness per edge in edge-id
/// order, all from one generator seeded with `spec.seed`.
pub fn generate_instance(spec: &GeneratorSpec) -> Result<InstanceFile> {
    if spec.n < 3 {
        return Err(Error::Config(format!("generated instances need n >= 3, got {}", spec.n)));
    }
    if !(spec.width > 0.0 && spec.height > 0.0 && spec.width.is_finite() && spec.height.is_finite()) {
        return Err(Error::Config("region must have positive finite size".into()));
    }
    spec.thickness.validate()?;
    if let Some(c) = &spec.cost {
        if !(0.0..=1.0).contains(&c.beta) {
            return Err(Error::Config(format!("beta {} outside [0, 1]", c.beta)));
        }
    }
    let mut rng = Rng::new(spec.seed);
    let coords: Vec<[f64; 2]> = (0..spec.n)
        .map(|_| {
            let x = rng.uniform() * spec.width;
            let y = rng.uniform() * spec.height;
            [x, y]
        })
        .collect();
    let inst = Instance::with_coords(coords.clone(), spec.directed)?;
    let thickness: Vec<f64> = inst.edges().map(|_| spec.thickness.draw(spec.n, &mut rng)).collect();
    let grid = Grid { width: spec.width, height: spec.height, h: spec.grid_h };
    let mut objective = ObjectiveSpec::Coverage { thickness, grid };
    if spec.length_bonus {
        objective = ObjectiveSpec::Bonus { base: Box::new(objective), bonus: CostSpec::Euclidean };
    }
    if let Some(c) = spec.cost {
        objective = ObjectiveSpec::Combined {
            base: Box::new(objective),
            cost: CostSpec::Euclidean,
            beta: c.beta,
            mode: c.mode,
            m_w: None,
            m_c: None,
            top_cost_offset: c.top_cost_offset,
        };
    }
    let file = InstanceFile { n: spec.n, directed: spec.directed, coords, objective, generator: Some(*spec) };
    file.build()?;
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeSet;

    #[test]
    fn same_seed_same_bytes() {
        let spec = GeneratorSpec::new(12, 77, ThicknessModel::default());
        let a = generate_instance(&spec).unwrap().to_json().unwrap();
        let b = generate_instance(&spec).unwrap().to_json().unwrap();
        assert_eq!(a, b);
        let c = generate_instance(&GeneratorSpec { seed: 78, ..spec }).unwrap().to_json().unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let spec = GeneratorSpec::new(9, 5, ThicknessModel::Uniform { lo: 0.0, hi: 7.0 });
        let file = generate_instance(&spec).unwrap();
        let back = InstanceFile::from_json(&file.to_json().unwrap()).unwrap();
        assert_eq!(back, file);
    }

    #[test]
    fn bernoulli_high_count_at_n100() {
        let spec = GeneratorSpec::new(100, 2024, ThicknessModel::default());
        let file = generate_instance(&spec).unwrap();
        let ObjectiveSpec::Coverage { thickness, .. } = &file.objective else { panic!() };
        assert_eq!(thickness.len(), 4950);
        let high = thickness.iter().filter(|&&t| t == 7.0).count() as f64;
        let (mean, sd) = (4950.0 * 0.2, (4950.0f64 * 0.2 * 0.8).sqrt());
        assert!((high - mean).abs() <= 3.0 * sd, "{high}");
        assert!(thickness.iter().all(|&t| t == 7.0 || t == 1.0));
    }

    #[test]
    fn fixed_zero_is_zero_everywhere() {
        let spec = GeneratorSpec::new(8, 1, ThicknessModel::Fixed { t: 0.0 });
        let (inst, f) = generate_instance(&spec).unwrap().build().unwrap();
        assert_eq!(f.value(&EdgeSet::full(inst.edge_count())), 0.0);
    }

    #[test]
    fn invalid_models_are_config_errors() {
        for model in [
            ThicknessModel::Fixed { t: -1.0 },
            ThicknessModel::Uniform { lo: 3.0, hi: 1.0 },
            ThicknessModel::Bernoulli { hi: 7.0, lo: 1.0, p: Some(1.5) },
        ] {
            assert!(matches!(generate_instance(&GeneratorSpec::new(5, 0, model)), Err(Error::Config(_))));
        }
        assert!(generate_instance(&GeneratorSpec::new(2, 0, ThicknessModel::default())).is_err());
    }

    #[test]
    fn p_is_clamped() {
        assert_eq!(ThicknessModel::bernoulli_p(3), 1.0);
        assert_eq!(ThicknessModel::bernoulli_p(100), 0.2);
    }
}
