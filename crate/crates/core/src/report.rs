//! Solver output: the solution, its value, effort and the guarantee it carries.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::graph::{EdgeId, EdgeSet};

/// The optimum a certificate is measured against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reference {
    Tour,
    TwoMatching,
    /// Best cycle cover of a digraph (assignment without fixed points).
    Assignment,
}

impl fmt::Display for Reference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reference::Tour => "tour",
            Reference::TwoMatching => "two-matching",
            Reference::Assignment => "assignment",
        })
    }
}

/// Shape of an approximation guarantee as a function of the curvature `κ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Bound {
    /// `1/(p+κ)`.
    Greedy { p: f64 },
    /// `1-κ`.
    Linear,
    /// `retain · max(1/(p+κ) if greedy, 1-κ if linear)`.
    Pipeline { retain: f64, p: f64, greedy: bool, linear: bool },
    /// No guarantee.
    None,
}

impl Bound {
    pub fn ratio(&self, kappa: f64) -> f64 {
        let k = kappa.clamp(0.0, 1.0);
        match *self {
            Bound::Greedy { p } => 1.0 / (p + k),
            Bound::Linear => 1.0 - k,
            Bound::Pipeline { retain, p, greedy, linear } => {
                let g = if greedy { 1.0 / (p + k) } else { 0.0 };
                let l = if linear { 1.0 - k } else { 0.0 };
                retain * g.max(l)
            }
            Bound::None => 0.0,
        }
    }

    pub fn p(&self) -> Option<f64> {
        match *self {
            Bound::Greedy { p } | Bound::Pipeline { p, .. } => Some(p),
            _ => None,
        }
    }
}

/// `value ≥ ratio · OPT(reference)`. Without a supplied `κ` the ratio uses the
/// worst case `κ = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub bound: Bound,
    pub reference: Reference,
    pub kappa: Option<f64>,
    pub ratio: f64,
}

impl Certificate {
    pub fn new(bound: Bound, reference: Reference) -> Self {
        Certificate { bound, reference, kappa: None, ratio: bound.ratio(1.0) }
    }

    pub fn p(&self) -> Option<f64> {
        self.bound.p()
    }

    pub fn certify(&mut self, kappa: f64) {
        self.kappa = Some(kappa);
        self.ratio = self.bound.ratio(kappa);
    }
}

/// One greedy selection.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub edge: EdgeId,
    /// Marginal gain at the moment of selection.
    pub gain: f64,
    /// Edges discarded as infeasible since the previous selection.
    pub rejected: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GreedyTrace {
    pub steps: Vec<TraceStep>,
}

impl GreedyTrace {
    pub fn total_gain(&self) -> f64 {
        self.steps.iter().map(|s| s.gain).sum()
    }

    pub fn order(&self) -> Vec<EdgeId> {
        self.steps.iter().map(|s| s.edge).collect()
    }
}

/// Result of removing one edge from each subtour.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReduceOutcome {
    pub removed: Vec<EdgeId>,
    pub before: f64,
    pub after: f64,
    /// Smallest reduced set size; the guarantee is `after ≥ (1-1/k)·before`.
    pub k: usize,
}

impl ReduceOutcome {
    pub fn holds(&self, rel_tol: f64) -> bool {
        if self.k == 0 {
            return self.after >= self.before - rel_tol * (1.0 + self.before.abs());
        }
        let need = (1.0 - 1.0 / self.k as f64) * self.before;
        self.after >= need - rel_tol * (1.0 + need.abs())
    }
}

/// Intermediate result of a multi-stage solver.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub value: f64,
    pub edges: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduce: Option<ReduceOutcome>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub algorithm: String,
    pub solution: EdgeSet,
    /// Objective value of `solution`, recomputed after the run.
    pub value: f64,
    /// Oracle evaluations made by the algorithm itself.
    pub oracle_calls: u64,
    /// Seconds.
    pub wall_time: f64,
    pub certificate: Certificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<GreedyTrace>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stages: Vec<Stage>,
}

impl SolveReport {
    pub fn certify(&mut self, kappa: f64) {
        self.certificate.certify(kappa);
    }

    pub fn reductions(&self) -> impl Iterator<Item = &ReduceOutcome> {
        self.stages.iter().filter_map(|s| s.reduce.as_ref())
    }
}
