//! Exact maximum-weight simple 2-matching via a matching gadget.
//!
//! Every vertex `v` gets two copies `v₁, v₂`. Every edge `e = uv` of positive
//! weight gets two nodes `e_u, e_v` joined by a middle edge of weight `2D`, and
//! side edges `uᵢ–e_u`, `e_v–vⱼ` of weight `q(e) + D` with `D > max |q|`. In a
//! maximum-weight matching every gadget is covered either by its middle edge
//! (e not chosen) or by both sides (e chosen, a gain of `2q(e)`), and each
//! vertex copy is used at most once, so chosen edges form a simple 2-matching
//! of maximum total `q`.

use super::blossom::max_weight_matching;
use crate::error::{contract, Result};
use crate::graph::{EdgeId, EdgeSet, Instance};

const SCALE_BITS: i32 = 40;

/// Maximum-weight simple 2-matching (degree ≤ 2, not necessarily perfect).
///
/// Weights are quantised to integers relative to the largest magnitude with
/// 40 bits of resolution; edges of non-positive weight are never chosen.
pub fn max_weight_two_matching(inst: &Instance, weights: &[f64]) -> Result<EdgeSet> {
    if inst.is_directed() {
        return Err(contract("2-matching needs an undirected instance"));
    }
    if weights.len() != inst.edge_count() {
        return Err(contract(format!("{} weights for {} edges", weights.len(), inst.edge_count())));
    }
    if weights.iter().any(|w| !w.is_finite()) {
        return Err(contract("weights must be finite"));
    }
    let mut out = inst.empty_set();
    let scale = weights.iter().fold(0.0f64, |a, w| a.max(w.abs()));
    if scale == 0.0 {
        return Ok(out);
    }
    let factor = 2f64.powi(SCALE_BITS) / scale;
    let chosen: Vec<(EdgeId, i64)> = inst
        .edges()
        .filter_map(|e| {
            let q = (weights[e.index()] * factor).round() as i64;
            (q > 0).then_some((e, q))
        })
        .collect();
    if chosen.is_empty() {
        return Ok(out);
    }
    let n = inst.n();
    let d = chosen.iter().map(|c| c.1).max().unwrap() + 1;
    let nodes = 2 * n + 2 * chosen.len();
    let mut edges = Vec::with_capacity(5 * chosen.len());
    for (k, &(e, q)) in chosen.iter().enumerate() {
        let (u, v) = inst.endpoints(e);
        let eu = 2 * n + 2 * k;
        let ev = eu + 1;
        edges.push((eu, ev, 2 * d));
        for c in 0..2 {
            edges.push((2 * u + c, eu, q + d));
            edges.push((ev, 2 * v + c, q + d));
        }
    }
    let mate = max_weight_matching(nodes, &edges);
    for (k, &(e, _)) in chosen.iter().enumerate() {
        let eu = 2 * n + 2 * k;
        if matches!(mate[eu], Some(x) if x < 2 * n) {
            out.insert(e);
        }
    }
    Ok(out)
}
