use super::{ordered_sum, SetFunction};
use crate::graph::{EdgeId, EdgeSet};

/// `w(S) = Σ_{e∈S} w(e)`.
#[derive(Clone, Debug)]
pub struct ModularObjective {
    weights: Vec<f64>,
}

impl ModularObjective {
    pub fn new(weights: Vec<f64>) -> Self {
        ModularObjective { weights }
    }

    /// Every edge weighs 1, so the value is the set size.
    pub fn cardinality(universe: usize) -> Self {
        ModularObjective { weights: vec![1.0; universe] }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl SetFunction for ModularObjective {
    fn ground_size(&self) -> usize {
        self.weights.len()
    }

    fn value(&self, s: &EdgeSet) -> f64 {
        ordered_sum(&self.weights, s, None)
    }

    fn value_with(&self, s: &EdgeSet, extra: EdgeId) -> f64 {
        ordered_sum(&self.weights, s, Some(extra))
    }

    fn is_monotone(&self) -> bool {
        self.weights.iter().all(|&w| w >= 0.0)
    }
}
