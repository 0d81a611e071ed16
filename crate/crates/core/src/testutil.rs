//! Small instance builders shared by unit tests.

use crate::graph::Instance;
use crate::objectives::{CoverageObjective, Grid, ModularObjective, ValueOracle};
use crate::rng::Rng;

pub fn random_points(n: usize, rng: &mut Rng) -> Vec<[f64; 2]> {
    (0..n).map(|_| [rng.uniform() * 100.0, rng.uniform() * 100.0]).collect()
}

pub fn coverage(n: usize, directed: bool, seed: u64, max_thickness: f64) -> (Instance, ValueOracle) {
    let mut rng = Rng::new(seed);
    let inst = Instance::with_coords(random_points(n, &mut rng), directed).unwrap();
    let t = (0..inst.edge_count()).map(|_| rng.uniform() * max_thickness).collect();
    let f = CoverageObjective::new(&inst, t, Grid::default()).unwrap();
    (inst, ValueOracle::new(f))
}

pub fn modular(n: usize, directed: bool, seed: u64) -> (Instance, ValueOracle) {
    let mut rng = Rng::new(seed);
    let inst = Instance::new(n, directed).unwrap();
    let w = (0..inst.edge_count()).map(|_| rng.uniform() * 10.0).collect();
    (inst, ValueOracle::new(ModularObjective::new(w)))
}

/// K4 with w(01)=5, w(02)=1, w(03)=2, w(12)=2, w(13)=1, w(23)=4.
pub fn k4() -> (Instance, ValueOracle) {
    let inst = Instance::new(4, false).unwrap();
    (inst, ValueOracle::new(ModularObjective::new(vec![5.0, 1.0, 2.0, 2.0, 1.0, 4.0])))
}
