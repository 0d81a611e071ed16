//! Reward/cost trade-offs and modular add-ons.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::{ordered_sum, SetFunction};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CostMode {
    /// `(1-β) w(S) - β c(S)`.
    Raw,
    /// `((1-β)/M_w) w(S) - (β/M_c) c(S)`.
    Normalized,
    /// `(1-β) w(S) - β c(S) + β |S| M` with `M` the largest edge cost.
    Shifted,
}

impl fmt::Display for CostMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CostMode::Raw => "raw",
            CostMode::Normalized => "normalized",
            CostMode::Shifted => "shifted",
        })
    }
}

impl FromStr for CostMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(CostMode::Raw),
            "normalized" => Ok(CostMode::Normalized),
            "shifted" => Ok(CostMode::Shifted),
            _ => Err(Error::Config(format!("unknown cost mode '{s}' (raw|normalized|shifted)"))),
        }
    }
}

/// A submodular reward combined with a modular, non-negative edge cost.
#[derive(Clone, Debug)]
pub struct CombinedCostObjective {
    base: Arc<dyn SetFunction>,
    costs: Vec<f64>,
    beta: f64,
    mode: CostMode,
    m_w: f64,
    m_c: f64,
    max_cost: f64,
    // prefix sums of costs sorted descending; used by the top-|S| offset
    top_prefix: Vec<f64>,
    top_offset: bool,
}

impl CombinedCostObjective {
    /// Normalisers default to `M_w = w(E)` and `M_c` = the sum of the
    /// `tour_len` largest costs.
    pub fn new(base: Arc<dyn SetFunction>, costs: Vec<f64>, beta: f64, mode: CostMode, tour_len: usize) -> Result<Self> {
        if costs.len() != base.ground_size() {
            return Err(Error::Config(format!("{} costs for {} edges", costs.len(), base.ground_size())));
        }
        if costs.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::Config("edge costs must be finite and non-negative".into()));
        }
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::Config(format!("beta {beta} outside [0, 1]")));
        }
        let mut sorted = costs.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        let mut top_prefix = Vec::with_capacity(sorted.len() + 1);
        top_prefix.push(0.0);
        for c in &sorted {
            top_prefix.push(top_prefix.last().unwrap() + c);
        }
        let max_cost = sorted.first().copied().unwrap_or(0.0);
        let m_c = top_prefix[tour_len.min(sorted.len())];
        let m_w = base.value(&EdgeSet::full(base.ground_size()));
        Ok(CombinedCostObjective {
            base,
            costs,
            beta,
            mode,
            m_w,
            m_c,
            max_cost,
            top_prefix,
            top_offset: false,
        })
    }

    pub fn with_normalizers(mut self, m_w: f64, m_c: f64) -> Result<Self> {
        if !(m_w > 0.0 && m_c > 0.0) {
            return Err(Error::Config("normalizers must be positive".into()));
        }
        self.m_w = m_w;
        self.m_c = m_c;
        Ok(self)
    }

    /// Shift by the sum of the `|S|` largest costs instead of `|S|·M`.
    pub fn with_top_cost_offset(mut self, on: bool) -> Self {
        self.top_offset = on;
        self
    }

    pub fn mode(&self) -> CostMode {
        self.mode
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn max_cost(&self) -> f64 {
        self.max_cost
    }

    pub fn normalizers(&self) -> (f64, f64) {
        (self.m_w, self.m_c)
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    /// The same objective in another mode.
    pub fn with_mode(&self, mode: CostMode) -> Self {
        CombinedCostObjective { mode, ..self.clone() }
    }

    fn combine(&self, w: f64, c: f64, size: usize) -> f64 {
        let b = self.beta;
        match self.mode {
            CostMode::Raw => (1.0 - b) * w - b * c,
            CostMode::Normalized => {
                let rw = if self.m_w > 0.0 { (1.0 - b) / self.m_w * w } else { 0.0 };
                let rc = if self.m_c > 0.0 { b / self.m_c * c } else { 0.0 };
                rw - rc
            }
            CostMode::Shifted => {
                let offset = if self.top_offset {
                    self.top_prefix[size.min(self.costs.len())]
                } else {
                    size as f64 * self.max_cost
                };
                (1.0 - b) * w - b * c + b * offset
            }
        }
    }
}

impl SetFunction for CombinedCostObjective {
    fn ground_size(&self) -> usize {
        self.costs.len()
    }

    fn value(&self, s: &EdgeSet) -> f64 {
        if s.is_empty() {
            return 0.0;
        }
        self.combine(self.base.value(s), ordered_sum(&self.costs, s, None), s.len())
    }

    fn value_with(&self, s: &EdgeSet, extra: EdgeId) -> f64 {
        let size = s.len() + usize::from(!s.contains(extra));
        self.combine(self.base.value_with(s, extra), ordered_sum(&self.costs, s, Some(extra)), size)
    }

    fn is_monotone(&self) -> bool {
        match self.mode {
            CostMode::Shifted if !self.top_offset => self.base.is_monotone(),
            _ => self.beta == 0.0 && self.base.is_monotone(),
        }
    }
}

/// `base(S) + Σ_{e∈S} bonus(e)`; with edge lengths as the bonus this is the
/// area-plus-length reward used by the curvature sweep.
#[derive(Clone, Debug)]
pub struct ModularBonus {
    base: Arc<dyn SetFunction>,
    bonus: Vec<f64>,
}

impl ModularBonus {
    pub fn new(base: Arc<dyn SetFunction>, bonus: Vec<f64>) -> Result<Self> {
        if bonus.len() != base.ground_size() {
            return Err(Error::Config(format!("{} bonus values for {} edges", bonus.len(), base.ground_size())));
        }
        Ok(ModularBonus { base, bonus })
    }
}

impl SetFunction for ModularBonus {
    fn ground_size(&self) -> usize {
        self.bonus.len()
    }

    fn value(&self, s: &EdgeSet) -> f64 {
        self.base.value(s) + ordered_sum(&self.bonus, s, None)
    }

    fn value_with(&self, s: &EdgeSet, extra: EdgeId) -> f64 {
        self.base.value_with(s, extra) + ordered_sum(&self.bonus, s, Some(extra))
    }

    fn is_monotone(&self) -> bool {
        self.base.is_monotone() && self.bonus.iter().all(|&b| b >= 0.0)
    }
}
