//! Total curvature and a sampled independence-system curvature.

use serde::{Deserialize, Serialize};

use super::ValueOracle;
use crate::error::Result;
use crate::graph::{EdgeId, EdgeSet, IndependenceSystem, Instance, SystemKind};
use crate::rng::Rng;

/// Curvature values below this are reported as exactly zero. Marginals of a
/// modular function computed from different float summation orders can differ
/// in the last bit.
pub const KAPPA_SNAP: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub kappa: f64,
    /// Sampled estimate of the independence-system curvature, if computed.
    pub kappa_i_estimate: Option<f64>,
    /// `(e, Δ_{E∖e}(e) / f({e}))` for every edge with positive singleton value.
    pub ratios: Vec<(EdgeId, f64)>,
    /// Edges with `f({e}) <= 0`, left out of the ratios.
    pub zero_value_edges: Vec<EdgeId>,
}

impl CurvatureReport {
    pub fn worst_edge(&self) -> Option<EdgeId> {
        self.ratios.iter().min_by(|a, b| a.1.total_cmp(&b.1)).map(|r| r.0)
    }
}

pub(crate) fn kappa_from_ratio(min_ratio: f64) -> f64 {
    let k = (1.0 - min_ratio).clamp(0.0, 1.0);
    if k < KAPPA_SNAP {
        0.0
    } else {
        k
    }
}

/// `κ = 1 - min_e Δ_{E∖e}(e) / f({e})`, clamped to `[0, 1]`.
///
/// Uses `2|E| + 1` oracle calls.
pub fn curvature(oracle: &ValueOracle) -> Result<CurvatureReport> {
    let m = oracle.ground_size();
    let full = EdgeSet::full(m);
    let f_all = oracle.evaluate(&full)?;
    let empty = EdgeSet::new(m);
    let mut ratios = Vec::with_capacity(m);
    let mut zero_value_edges = Vec::new();
    let mut rest = full;
    for i in 0..m {
        let e = EdgeId::from(i);
        let single = oracle.evaluate_with(&empty, e)?;
        rest.remove(e);
        let without = oracle.evaluate(&rest)?;
        rest.insert(e);
        if single > 0.0 {
            ratios.push((e, (f_all - without) / single));
        } else {
            zero_value_edges.push(e);
        }
    }
    let min_ratio = ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let kappa = if ratios.is_empty() { 0.0 } else { kappa_from_ratio(min_ratio) };
    Ok(CurvatureReport { kappa, kappa_i_estimate: None, ratios, zero_value_edges })
}

/// Sampled estimate of `κ_I`.
///
/// Each sample builds a basis `B` by adding edges in a random order whenever
/// the system allows it, then scores every `e ∈ B` against `A = B ∖ e`. Since
/// marginals shrink as `A` grows, bases are the only sets worth sampling. The
/// result never exceeds `κ` beyond rounding.
pub fn kappa_i_estimate(
    oracle: &ValueOracle,
    inst: &Instance,
    kind: SystemKind,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let m = inst.edge_count();
    let empty = EdgeSet::new(m);
    let mut singles: Vec<Option<f64>> = vec![None; m];
    let mut rng = Rng::new(seed);
    let mut order: Vec<EdgeId> = inst.edges().collect();
    let mut min_ratio = f64::INFINITY;
    for _ in 0..samples.max(1) {
        rng.shuffle(&mut order);
        let mut sys = IndependenceSystem::new(kind, inst)?;
        for &e in &order {
            if sys.can_add(e)? {
                sys.add(e)?;
            }
        }
        let mut basis = sys.into_members();
        let f_b = oracle.evaluate(&basis)?;
        for e in basis.to_vec() {
            let single = match singles[e.index()] {
                Some(v) => v,
                None => {
                    let v = oracle.evaluate_with(&empty, e)?;
                    singles[e.index()] = Some(v);
                    v
                }
            };
            if single <= 0.0 {
                continue;
            }
            basis.remove(e);
            let without = oracle.evaluate(&basis)?;
            basis.insert(e);
            min_ratio = min_ratio.min((f_b - without) / single);
        }
    }
    Ok(if min_ratio.is_finite() { kappa_from_ratio(min_ratio) } else { 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{CoverageObjective, Grid, ModularObjective};

    #[test]
    fn modular_has_zero_curvature() {
        let mut rng = Rng::new(3);
        let w: Vec<f64> = (0..45).map(|_| rng.uniform() * 100.0).collect();
        let o = ValueOracle::new(ModularObjective::new(w));
        let r = curvature(&o).unwrap();
        assert_eq!(r.kappa, 0.0);
        assert_eq!(o.calls(), 2 * 45 + 1);
        let inst = Instance::new(10, false).unwrap();
        for kind in [SystemKind::TspUndirected, SystemKind::TwoMatching] {
            assert_eq!(kappa_i_estimate(&o, &inst, kind, 20, 1).unwrap(), 0.0);
        }
    }

    #[test]
    fn duplicate_coverage_edges_give_full_curvature() {
        // vertices 0,1 and 2,3 coincide, so edges 01 and 23 are identical
        let coords = vec![[10.0, 10.0], [40.0, 10.0], [10.0, 10.0], [40.0, 10.0]];
        let inst = Instance::with_coords(coords, false).unwrap();
        let f = CoverageObjective::new(&inst, vec![2.0; 6], Grid::default()).unwrap();
        let r = curvature(&ValueOracle::new(f)).unwrap();
        assert_eq!(r.kappa, 1.0);
    }

    #[test]
    fn zero_value_edges_are_listed() {
        let o = ValueOracle::new(ModularObjective::new(vec![1.0, 0.0, 2.0]));
        let r = curvature(&o).unwrap();
        assert_eq!(r.zero_value_edges, vec![EdgeId(1)]);
        assert_eq!(r.ratios.len(), 2);
        assert_eq!(r.kappa, 0.0);
    }

    #[test]
    fn estimate_never_exceeds_kappa() {
        for seed in 0..5 {
            let mut rng = Rng::new(seed);
            let coords: Vec<[f64; 2]> = (0..7).map(|_| [rng.uniform() * 100.0, rng.uniform() * 100.0]).collect();
            let inst = Instance::with_coords(coords, false).unwrap();
            let t: Vec<f64> = (0..inst.edge_count()).map(|_| rng.uniform() * 7.0).collect();
            let o = ValueOracle::new(CoverageObjective::new(&inst, t, Grid::default()).unwrap());
            let kappa = curvature(&o).unwrap().kappa;
            for kind in [SystemKind::TspUndirected, SystemKind::TwoMatching] {
                let est = kappa_i_estimate(&o, &inst, kind, 50, seed).unwrap();
                assert!(est <= kappa + 1e-12, "{est} > {kappa}");
            }
        }
    }
}
