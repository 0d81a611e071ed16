//! Experiment configuration, read from TOML.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::generate::{CostConfig, GeneratorSpec, ThicknessModel};
use crate::error::{Error, Result};
use crate::matching::PipelineConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    GT,
    RT,
    GM,
    GM2,
    GM3,
    LGmatching,
    Lmatching,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::GT,
        Algorithm::RT,
        Algorithm::GM,
        Algorithm::GM2,
        Algorithm::GM3,
        Algorithm::LGmatching,
        Algorithm::Lmatching,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::GT => "GT",
            Algorithm::RT => "RT",
            Algorithm::GM => "GM",
            Algorithm::GM2 => "GM2",
            Algorithm::GM3 => "GM3",
            Algorithm::LGmatching => "LGmatching",
            Algorithm::Lmatching => "Lmatching",
        }
    }

    /// Pipeline settings for the matching-based algorithms.
    pub fn pipeline(self) -> Option<PipelineConfig> {
        match self {
            Algorithm::GT | Algorithm::RT => None,
            Algorithm::GM => Some(PipelineConfig::gm()),
            Algorithm::GM2 => Some(PipelineConfig::gm2()),
            Algorithm::GM3 => Some(PipelineConfig::gm3()),
            Algorithm::LGmatching => Some(PipelineConfig::lg_matching()),
            Algorithm::Lmatching => Some(PipelineConfig::l_matching()),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown algorithm {s:?}")))
    }
}

/// The thickness sweep on the coverage-plus-length objective.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default = "default_sweep_n")]
    pub n: usize,
    #[serde(default = "default_sweep_instances")]
    pub instances: usize,
    #[serde(default = "default_thicknesses")]
    pub thicknesses: Vec<f64>,
}

fn default_sweep_n() -> usize {
    10
}

fn default_sweep_instances() -> usize {
    20
}

fn default_thicknesses() -> Vec<f64> {
    (0..=7).map(f64::from).collect()
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { n: default_sweep_n(), instances: default_sweep_instances(), thicknesses: default_thicknesses() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<Algorithm>,
    #[serde(default = "default_sizes")]
    pub sizes: Vec<usize>,
    #[serde(default = "default_instances")]
    pub instances: usize,
    /// Instance `i` of size `n` is generated from `seed + 1000 n + i`.
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub directed: bool,
    #[serde(default = "default_side")]
    pub width: f64,
    #[serde(default = "default_side")]
    pub height: f64,
    #[serde(default)]
    pub thickness: ThicknessModel,
    #[serde(default = "default_h")]
    pub grid_h: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost: Option<CostConfig>,
    #[serde(default)]
    pub sweep: SweepConfig,
    #[serde(default = "default_out")]
    pub out: PathBuf,
}

fn default_algorithms() -> Vec<Algorithm> {
    vec![Algorithm::GT, Algorithm::RT, Algorithm::GM, Algorithm::GM2, Algorithm::GM3]
}

fn default_sizes() -> Vec<usize> {
    vec![10, 20, 50]
}

fn default_instances() -> usize {
    30
}

fn default_side() -> f64 {
    100.0
}

fn default_h() -> f64 {
    0.5
}

fn default_out() -> PathBuf {
    PathBuf::from("results")
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        toml::from_str("").expect("defaults parse")
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn instance_seed(&self, n: usize, i: usize) -> u64 {
        self.seed.wrapping_add(1000 * n as u64).wrapping_add(i as u64)
    }

    pub fn generator(&self, n: usize, i: usize) -> GeneratorSpec {
        GeneratorSpec {
            n,
            directed: self.directed,
            width: self.width,
            height: self.height,
            seed: self.instance_seed(n, i),
            thickness: self.thickness,
            grid_h: self.grid_h,
            cost: self.cost,
            length_bonus: false,
        }
    }

    /// Sweep instance `i` at thickness `t`. Coordinates depend only on `i`, so
    /// every thickness sees the same vertex layout.
    pub fn sweep_generator(&self, i: usize, t: f64) -> GeneratorSpec {
        GeneratorSpec {
            n: self.sweep.n,
            directed: false,
            width: self.width,
            height: self.height,
            seed: self.instance_seed(self.sweep.n, i),
            thickness: ThicknessModel::Fixed { t },
            grid_h: self.grid_h,
            cost: None,
            length_bonus: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(Error::Config("algorithm list is empty".into()));
        }
        let mut seen = self.algorithms.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.algorithms.len() {
            return Err(Error::Config("algorithm list has duplicates".into()));
        }
        if self.sizes.is_empty() || self.instances == 0 {
            return Err(Error::Config("need at least one size and one instance".into()));
        }
        if let Some(&n) = self.sizes.iter().find(|&&n| n < 3) {
            return Err(Error::Config(format!("size {n} below 3")));
        }
        if !(self.grid_h > 0.0 && self.grid_h.is_finite()) {
            return Err(Error::Config(format!("grid_h must be positive, got {}", self.grid_h)));
        }
        Ok(())
    }

    pub fn validate_sweep(&self) -> Result<()> {
        let s = &self.sweep;
        if s.thicknesses.is_empty() {
            return Err(Error::Config("thickness grid is empty".into()));
        }
        if s.thicknesses.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return Err(Error::Config("thicknesses must be finite and non-negative".into()));
        }
        if s.n < 3 || s.instances == 0 {
            return Err(Error::Config("sweep needs n >= 3 and at least one instance".into()));
        }
        if !(self.grid_h > 0.0 && self.grid_h.is_finite()) {
            return Err(Error::Config(format!("grid_h must be positive, got {}", self.grid_h)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::CostMode;

    #[test]
    fn defaults() {
        let cfg = ExperimentConfig::default();
        assert_eq!(cfg.sizes, vec![10, 20, 50]);
        assert_eq!(cfg.instances, 30);
        assert_eq!(cfg.sweep.thicknesses.len(), 8);
        assert_eq!(cfg.thickness, ThicknessModel::default());
        cfg.validate().unwrap();
    }

    #[test]
    fn toml_round_trip() {
        let text = r#"
            algorithms = ["GT", "lgmatching"]
            sizes = [5]
            instances = 2
            seed = 9
            thickness = { model = "uniform", lo = 0.0, hi = 7.0 }
            cost = { beta = 0.5, mode = "shifted" }
        "#;
        let cfg = ExperimentConfig::from_toml(text);
        // serde names are exact; case-insensitive names are a CLI convenience
        assert!(cfg.is_err());
        let cfg = ExperimentConfig::from_toml(&text.replace("lgmatching", "LGmatching")).unwrap();
        assert_eq!(cfg.algorithms, vec![Algorithm::GT, Algorithm::LGmatching]);
        assert_eq!(cfg.cost.unwrap().mode, CostMode::Shifted);
        let back = ExperimentConfig::from_toml(&cfg.to_toml().unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(matches!(ExperimentConfig::from_toml("sizez = [3]"), Err(Error::Config(_))));
    }

    #[test]
    fn empty_or_duplicate_algorithms_rejected() {
        let mut cfg = ExperimentConfig { algorithms: vec![], ..Default::default() };
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        cfg.algorithms = vec![Algorithm::GT, Algorithm::GT];
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn algorithm_names_parse() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().to_lowercase().parse::<Algorithm>().unwrap(), a);
            if let Some(p) = a.pipeline() {
                assert_eq!(p.name(), a.name());
            }
        }
        assert!("XX".parse::<Algorithm>().is_err());
    }

    #[test]
    fn seeds_are_distinct_across_sizes() {
        let cfg = ExperimentConfig::default();
        assert_ne!(cfg.instance_seed(10, 0), cfg.instance_seed(20, 0));
        assert_eq!(cfg.instance_seed(10, 5), 10_005);
    }
}
