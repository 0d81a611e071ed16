#![allow(dead_code)]

use std::sync::Arc;

use subtour_core::bench::{generate_instance, CostConfig, GeneratorSpec, ThicknessModel};
use subtour_core::graph::{EdgeSet, Instance};
use subtour_core::objectives::{CostMode, ModularObjective, SetFunction, ValueOracle};
use subtour_core::rng::Rng;

pub type Problem = (Instance, Arc<dyn SetFunction>);

/// Coverage instance; even seeds use Bernoulli thickness, odd seeds uniform.
pub fn coverage(n: usize, directed: bool, seed: u64) -> Problem {
    let thickness = if seed.is_multiple_of(2) {
        ThicknessModel::default()
    } else {
        ThicknessModel::Uniform { lo: 0.0, hi: 7.0 }
    };
    let spec = GeneratorSpec { directed, ..GeneratorSpec::new(n, seed, thickness) };
    generate_instance(&spec).unwrap().build().unwrap()
}

pub fn coverage_with_cost(n: usize, seed: u64, beta: f64, mode: CostMode) -> Problem {
    let spec = GeneratorSpec {
        cost: Some(CostConfig { beta, mode, top_cost_offset: false }),
        ..GeneratorSpec::new(n, seed, ThicknessModel::Uniform { lo: 0.0, hi: 7.0 })
    };
    generate_instance(&spec).unwrap().build().unwrap()
}

pub fn modular(n: usize, directed: bool, seed: u64) -> Problem {
    let inst = Instance::new(n, directed).unwrap();
    let mut rng = Rng::new(seed);
    let w: Vec<f64> = inst.edges().map(|_| 10.0 * rng.uniform()).collect();
    (inst, Arc::new(ModularObjective::new(w)))
}

pub fn random_weights(m: usize, rng: &mut Rng) -> Vec<f64> {
    (0..m).map(|_| 100.0 * rng.uniform() - 10.0).collect()
}

/// Sum over the set in edge-id order, so equal sets give bit-equal sums.
pub fn set_sum(w: &[f64], s: &EdgeSet) -> f64 {
    s.iter().map(|e| w[e.index()]).sum()
}

pub fn oracle(f: &Arc<dyn SetFunction>) -> ValueOracle {
    ValueOracle::from_arc(f.clone())
}

pub fn rel_ge(a: f64, b: f64, tol: f64) -> bool {
    a >= b - tol * a.abs().max(b.abs()).max(1.0)
}
