//! Serializable descriptions of objectives, as embedded in instance files.

use serde::{Deserialize, Serialize};
use std::sync::Arc;

use super::{CombinedCostObjective, CostMode, CoverageObjective, Grid, ModularBonus, ModularObjective, SetFunction};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Instance};

/// Per-edge non-negative data: either Euclidean edge lengths or explicit values
/// in edge-id order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CostSpec {
    Euclidean,
    Values(Vec<f64>),
}

impl CostSpec {
    pub fn resolve(&self, inst: &Instance) -> Result<Vec<f64>> {
        match self {
            CostSpec::Euclidean => {
                if inst.coords().is_none() {
                    return Err(Error::Config("euclidean costs need vertex coordinates".into()));
                }
                Ok(inst.edges().map(|e| inst.length(e)).collect())
            }
            CostSpec::Values(v) => {
                if v.len() != inst.edge_count() {
                    return Err(Error::Config(format!("{} values for {} edges", v.len(), inst.edge_count())));
                }
                Ok(v.clone())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ObjectiveSpec {
    Modular {
        weights: Vec<f64>,
    },
    Coverage {
        thickness: Vec<f64>,
        #[serde(default)]
        grid: Grid,
    },
    /// `(1-β) base - β cost`, in the given mode.
    Combined {
        base: Box<ObjectiveSpec>,
        cost: CostSpec,
        beta: f64,
        mode: CostMode,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m_w: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m_c: Option<f64>,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        top_cost_offset: bool,
    },
    /// `base + Σ bonus(e)`.
    Bonus {
        base: Box<ObjectiveSpec>,
        bonus: CostSpec,
    },
}

impl ObjectiveSpec {
    pub fn build(&self, inst: &Instance) -> Result<Arc<dyn SetFunction>> {
        let m = inst.edge_count();
        Ok(match self {
            ObjectiveSpec::Modular { weights } => {
                if weights.len() != m {
                    return Err(Error::Config(format!("{} weights for {m} edges", weights.len())));
                }
                Arc::new(ModularObjective::new(weights.clone()))
            }
            ObjectiveSpec::Coverage { thickness, grid } => {
                Arc::new(CoverageObjective::new(inst, thickness.clone(), *grid)?)
            }
            ObjectiveSpec::Combined { base, cost, beta, mode, m_w, m_c, top_cost_offset } => {
                let base = base.build(inst)?;
                let mut f = CombinedCostObjective::new(base, cost.resolve(inst)?, *beta, *mode, inst.n())?;
                if m_w.is_some() || m_c.is_some() {
                    let (dw, dc) = f.normalizers();
                    f = f.with_normalizers(m_w.unwrap_or(dw), m_c.unwrap_or(dc))?;
                }
                Arc::new(f.with_top_cost_offset(*top_cost_offset))
            }
            ObjectiveSpec::Bonus { base, bonus } => Arc::new(ModularBonus::new(base.build(inst)?, bonus.resolve(inst)?)?),
        })
    }

    /// The same spec with every combined layer switched to `mode`.
    pub fn with_mode(&self, new_mode: CostMode) -> ObjectiveSpec {
        let mut out = self.clone();
        if let ObjectiveSpec::Combined { mode, base, .. } = &mut out {
            *mode = new_mode;
            **base = base.with_mode(new_mode);
        }
        out
    }

    /// True when every singleton is worth exactly zero. Evaluates the set
    /// function directly, so no oracle counter is touched.
    pub fn is_zero_everywhere(&self, inst: &Instance) -> Result<bool> {
        let f = self.build(inst)?;
        let empty = inst.empty_set();
        Ok((0..inst.edge_count()).all(|i| f.value_with(&empty, EdgeId::from(i)) == 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeSet;

    fn inst() -> Instance {
        Instance::with_coords(vec![[0.0, 0.0], [30.0, 40.0], [60.0, 0.0], [10.0, 90.0]], false).unwrap()
    }

    #[test]
    fn json_round_trip() {
        let spec = ObjectiveSpec::Combined {
            base: Box::new(ObjectiveSpec::Coverage { thickness: vec![1.5; 6], grid: Grid::default() }),
            cost: CostSpec::Euclidean,
            beta: 0.25,
            mode: CostMode::Shifted,
            m_w: None,
            m_c: None,
            top_cost_offset: false,
        };
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"kind\":\"combined\""));
        let back: ObjectiveSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn builds_each_kind() {
        let inst = inst();
        let modular = ObjectiveSpec::Modular { weights: vec![5.0, 1.0, 2.0, 2.0, 1.0, 4.0] };
        let f = modular.build(&inst).unwrap();
        assert_eq!(f.value(&EdgeSet::full(6)), 15.0);

        let bonus = ObjectiveSpec::Bonus { base: Box::new(modular.clone()), bonus: CostSpec::Euclidean };
        let f = bonus.build(&inst).unwrap();
        assert_eq!(f.value(&EdgeSet::from_ids(6, [EdgeId(0)])), 5.0 + 50.0);

        let bad = ObjectiveSpec::Modular { weights: vec![1.0] };
        assert!(bad.build(&inst).is_err());
        let zero = ObjectiveSpec::Coverage { thickness: vec![0.0; 6], grid: Grid::default() };
        assert!(zero.is_zero_everywhere(&inst).unwrap());
    }
}
