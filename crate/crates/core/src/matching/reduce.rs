//! Breaking subtours while keeping a guaranteed share of the value.

use crate::error::{contract, Error, Result};
use crate::graph::{decompose_matching, ComponentKind, EdgeId, EdgeSet, Instance};
use crate::objectives::ValueOracle;
use crate::report::ReduceOutcome;

fn slack(x: f64) -> f64 {
    1e-12 * (1.0 + x.abs())
}

/// Removes one element from each part of `s` so that at least `(1-1/k)` of
/// `f(s)` remains, `k` being the smallest part size.
///
/// Parts are disjoint subsets of `s` with at least two elements each; other
/// elements of `s` are kept and never removed. Candidate `i` removes the
/// `i`-th smallest edge id of every part; candidates are tried for
/// `i = 1..k` and the first that keeps enough value is returned. For a
/// monotone submodular `f` the `k` candidates are disjoint and their losses
/// sum to at most `f(s)`, so one of them always qualifies.
pub fn reduce_set(oracle: &ValueOracle, s: &EdgeSet, parts: &[Vec<EdgeId>]) -> Result<ReduceOutcome> {
    let mut seen = EdgeSet::new(s.universe());
    let mut sorted: Vec<Vec<EdgeId>> = Vec::with_capacity(parts.len());
    for part in parts {
        if part.len() < 2 {
            return Err(contract(format!("reduce_set part of size {} (need at least 2)", part.len())));
        }
        for &e in part {
            if e.index() >= s.universe() || !s.contains(e) {
                return Err(contract(format!("{e} is in a part but not in the set")));
            }
            if !seen.insert(e) {
                return Err(contract(format!("{e} appears in two parts")));
            }
        }
        let mut p = part.clone();
        p.sort();
        sorted.push(p);
    }
    let before = oracle.evaluate(s)?;
    if sorted.is_empty() {
        return Ok(ReduceOutcome { removed: Vec::new(), before, after: before, k: 0 });
    }
    let k = sorted.iter().map(Vec::len).min().unwrap();
    let threshold = (1.0 - 1.0 / k as f64) * before;
    let mut best = f64::NEG_INFINITY;
    for i in 0..k {
        let removed: Vec<EdgeId> = sorted.iter().map(|p| p[i]).collect();
        let mut rest = s.clone();
        for &e in &removed {
            rest.remove(e);
        }
        let after = oracle.evaluate(&rest)?;
        if after >= threshold - slack(threshold) {
            return Ok(ReduceOutcome { removed, before, after, k });
        }
        best = best.max(after);
    }
    Err(Error::NotSubmodular { k, threshold, best })
}

fn subtours(inst: &Instance, m: &EdgeSet) -> Result<Vec<Vec<EdgeId>>> {
    Ok(decompose_matching(inst, m)?
        .into_iter()
        .filter(|c| c.kind == ComponentKind::Subtour && c.len() > 1)
        .map(|c| c.edges)
        .collect())
}

fn apply(m: &EdgeSet, outcome: &ReduceOutcome) -> EdgeSet {
    let mut out = m.clone();
    for &e in &outcome.removed {
        out.remove(e);
    }
    out
}

/// Breaks every cycle of a degree-feasible set with [`reduce_set`].
///
/// Path edges stay in the set and are never candidates for removal.
pub fn reduce_matching(inst: &Instance, oracle: &ValueOracle, m: &EdgeSet) -> Result<(EdgeSet, ReduceOutcome)> {
    let parts = subtours(inst, m)?;
    let outcome = reduce_set(oracle, m, &parts)?;
    Ok((apply(m, &outcome), outcome))
}

/// Breaks every cycle by removing, cycle by cycle, the edge whose removal
/// costs least against the running set (ties to the lowest edge id).
pub fn best_edge_reduction(inst: &Instance, oracle: &ValueOracle, m: &EdgeSet) -> Result<(EdgeSet, ReduceOutcome)> {
    let parts = subtours(inst, m)?;
    let before = oracle.evaluate(m)?;
    let mut current = m.clone();
    let mut value = before;
    let mut removed = Vec::with_capacity(parts.len());
    for part in &parts {
        let mut best: Option<(f64, EdgeId)> = None;
        for &e in part {
            current.remove(e);
            let v = oracle.evaluate(&current)?;
            current.insert(e);
            let better = match best {
                None => true,
                Some((bv, be)) => v > bv || (v == bv && e < be),
            };
            if better {
                best = Some((v, e));
            }
        }
        let (v, e) = best.expect("cycles are non-empty");
        current.remove(e);
        value = v;
        removed.push(e);
    }
    let k = parts.iter().map(Vec::len).min().unwrap_or(0);
    Ok((current, ReduceOutcome { removed, before, after: value, k }))
}
