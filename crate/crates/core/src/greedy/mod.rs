//! Greedy maximisation over an independence system.
//!
//! Two equivalent strategies are provided. [`Strategy::Naive`] recomputes the
//! marginal gain of every remaining edge whenever the solution grows and then
//! walks down the sorted gains, discarding infeasible edges for good.
//! [`Strategy::Lazy`] keeps stale gains in a max-heap as upper bounds and only
//! re-evaluates an edge when it reaches the top, checking feasibility first.
//!
//! Both pick the feasible edge of largest gain, ties going to the lowest
//! [`EdgeId`]. Gains computed against different sets can differ by rounding,
//! so the lazy strategy also refreshes every stale bound within a tiny
//! tolerance of the best fresh gain before choosing; with that, both produce
//! the same set on any submodular oracle.
//!
//! Negative gains are still taken: a basis (a closed tour) is always produced.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, IndependenceSystem, Instance, SystemKind};
use crate::objectives::ValueOracle;
use crate::report::{Bound, Certificate, GreedyTrace, Reference, SolveReport, TraceStep};
use crate::rng::Rng;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    Lazy,
    Naive,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyOptions {
    pub strategy: Strategy,
}

impl GreedyOptions {
    pub fn naive() -> Self {
        GreedyOptions { strategy: Strategy::Naive }
    }
}

fn tolerance(scale: f64) -> f64 {
    1e-10 * (1.0 + scale.abs())
}

/// Grows `sys` greedily until it is maximal or no candidate edges remain.
/// Returns the selection trace; `Σ gain = f(final) - f(initial)`.
pub fn extend_greedily(oracle: &ValueOracle, sys: &mut IndependenceSystem<'_>, strategy: Strategy) -> Result<GreedyTrace> {
    let inst = sys.instance();
    if oracle.ground_size() != inst.edge_count() {
        return Err(crate::error::contract("oracle and instance have different edge counts"));
    }
    let candidates: Vec<EdgeId> = inst.edges().filter(|e| !sys.members().contains(*e)).collect();
    match strategy {
        Strategy::Naive => naive(oracle, sys, candidates),
        Strategy::Lazy => lazy(oracle, sys, candidates),
    }
}

fn by_gain_then_id(a: &(f64, EdgeId), b: &(f64, EdgeId)) -> Ordering {
    b.0.total_cmp(&a.0).then(a.1.cmp(&b.1))
}

fn naive(oracle: &ValueOracle, sys: &mut IndependenceSystem<'_>, mut remaining: Vec<EdgeId>) -> Result<GreedyTrace> {
    let mut trace = GreedyTrace::default();
    let mut current = oracle.evaluate(sys.members())?;
    let mut rejected = 0;
    while !remaining.is_empty() && !sys.is_maximal() {
        let mut gains = Vec::with_capacity(remaining.len());
        for &e in &remaining {
            let v = oracle.evaluate_with(sys.members(), e)?;
            gains.push((v - current, e, v));
        }
        gains.sort_by(|a, b| by_gain_then_id(&(a.0, a.1), &(b.0, b.1)));
        let mut discarded = Vec::new();
        let mut chosen = None;
        for &(gain, e, v) in &gains {
            if sys.can_add(e)? {
                chosen = Some((gain, e, v));
                break;
            }
            discarded.push(e);
            rejected += 1;
        }
        remaining.retain(|e| !discarded.contains(e));
        let Some((gain, e, v)) = chosen else { break };
        sys.add(e)?;
        remaining.retain(|&x| x != e);
        trace.steps.push(TraceStep { edge: e, gain, rejected });
        rejected = 0;
        current = v;
    }
    Ok(trace)
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    bound: f64,
    edge: EdgeId,
    // round in which `bound` was computed; None before the first evaluation
    round: Option<usize>,
    value: f64,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound.total_cmp(&other.bound).then(other.edge.cmp(&self.edge))
    }
}

fn lazy(oracle: &ValueOracle, sys: &mut IndependenceSystem<'_>, candidates: Vec<EdgeId>) -> Result<GreedyTrace> {
    let mut trace = GreedyTrace::default();
    let mut current = oracle.evaluate(sys.members())?;
    let mut heap: BinaryHeap<Entry> = candidates
        .into_iter()
        .map(|edge| Entry { bound: f64::INFINITY, edge, round: None, value: f64::NAN })
        .collect();
    let mut rejected = 0;
    let mut round = 0;
    while !sys.is_maximal() {
        let mut fresh: Vec<Entry> = Vec::new();
        let mut best: Option<f64> = None;
        while let Some(&top) = heap.peek() {
            if let Some(b) = best {
                if top.bound < b - tolerance(current.abs().max(b.abs())) {
                    break;
                }
            }
            heap.pop();
            if !sys.can_add(top.edge)? {
                rejected += 1;
                continue;
            }
            if top.round == Some(round) {
                best = Some(best.map_or(top.bound, |b: f64| b.max(top.bound)));
                fresh.push(top);
            } else {
                let v = oracle.evaluate_with(sys.members(), top.edge)?;
                heap.push(Entry { bound: v - current, edge: top.edge, round: Some(round), value: v });
            }
        }
        let Some(pick) = fresh.iter().copied().max() else { break };
        for entry in fresh {
            if entry.edge != pick.edge {
                heap.push(entry);
            }
        }
        sys.add(pick.edge)?;
        trace.steps.push(TraceStep { edge: pick.edge, gain: pick.bound, rejected });
        rejected = 0;
        current = pick.value;
        round += 1;
    }
    Ok(trace)
}

fn reference_for(kind: SystemKind) -> Reference {
    match kind {
        SystemKind::TspUndirected | SystemKind::TspDirected => Reference::Tour,
        SystemKind::TwoMatching => Reference::TwoMatching,
        SystemKind::DegreeInOut => Reference::Assignment,
    }
}

fn run(
    name: &str,
    oracle: &ValueOracle,
    mut sys: IndependenceSystem<'_>,
    strategy: Strategy,
    certificate: Certificate,
) -> Result<SolveReport> {
    let start = Instant::now();
    let calls = oracle.calls();
    let trace = extend_greedily(oracle, &mut sys, strategy)?;
    let oracle_calls = oracle.calls() - calls;
    let wall_time = start.elapsed().as_secs_f64();
    let solution = sys.into_members();
    Ok(SolveReport {
        algorithm: name.to_string(),
        value: oracle.function().value(&solution),
        solution,
        oracle_calls,
        wall_time,
        certificate,
        trace: Some(trace),
        stages: Vec::new(),
    })
}

/// Naive greedy over `sys`, starting from its current members.
pub fn greedy_general(oracle: &ValueOracle, sys: IndependenceSystem<'_>) -> Result<SolveReport> {
    let cert = Certificate::new(Bound::Greedy { p: sys.p() }, reference_for(sys.kind()));
    run("greedy-naive", oracle, sys, Strategy::Naive, cert)
}

/// Lazy greedy over `sys`; same solution as [`greedy_general`] with fewer calls.
pub fn greedy_lazy(oracle: &ValueOracle, sys: IndependenceSystem<'_>) -> Result<SolveReport> {
    let cert = Certificate::new(Bound::Greedy { p: sys.p() }, reference_for(sys.kind()));
    run("greedy-lazy", oracle, sys, Strategy::Lazy, cert)
}

fn need_undirected_tour(inst: &Instance) -> Result<()> {
    if inst.is_directed() {
        return Err(Error::InvalidInstance("expected an undirected instance".into()));
    }
    if inst.n() < 3 {
        return Err(Error::InvalidInstance(format!("a tour needs at least 3 vertices, got {}", inst.n())));
    }
    Ok(())
}

/// Greedy Hamiltonian tour on an undirected instance, guaranteed `1/(2+κ)`.
pub fn greedy_tour(inst: &Instance, oracle: &ValueOracle, opts: GreedyOptions) -> Result<SolveReport> {
    need_undirected_tour(inst)?;
    let sys = IndependenceSystem::new(SystemKind::TspUndirected, inst)?;
    run("GT", oracle, sys, opts.strategy, Certificate::new(Bound::Greedy { p: 2.0 }, Reference::Tour))
}

/// Greedy directed Hamiltonian cycle, guaranteed `1/(3+κ)`.
pub fn greedy_tour_directed(inst: &Instance, oracle: &ValueOracle, opts: GreedyOptions) -> Result<SolveReport> {
    if !inst.is_directed() {
        return Err(Error::InvalidInstance("expected a directed instance".into()));
    }
    let sys = IndependenceSystem::new(SystemKind::TspDirected, inst)?;
    run("GT-directed", oracle, sys, opts.strategy, Certificate::new(Bound::Greedy { p: 3.0 }, Reference::Tour))
}

/// Greedy maximal simple 2-matching (undirected) or in/out-degree-one set
/// (directed), guaranteed `1/(2+κ)` of the best 2-matching or cycle cover.
pub fn greedy_matching(inst: &Instance, oracle: &ValueOracle, opts: GreedyOptions) -> Result<SolveReport> {
    let (kind, reference) = if inst.is_directed() {
        (SystemKind::DegreeInOut, Reference::Assignment)
    } else {
        (SystemKind::TwoMatching, Reference::TwoMatching)
    };
    let sys = IndependenceSystem::new(kind, inst)?;
    run("greedy-matching", oracle, sys, opts.strategy, Certificate::new(Bound::Greedy { p: 2.0 }, reference))
}

/// Adds edges in a seeded random order whenever feasible. Makes no oracle calls.
pub fn random_tour(inst: &Instance, oracle: &ValueOracle, seed: u64) -> Result<SolveReport> {
    let kind = if inst.is_directed() {
        SystemKind::TspDirected
    } else {
        need_undirected_tour(inst)?;
        SystemKind::TspUndirected
    };
    let start = Instant::now();
    let mut order: Vec<EdgeId> = inst.edges().collect();
    Rng::new(seed).shuffle(&mut order);
    let mut sys = IndependenceSystem::new(kind, inst)?;
    for e in order {
        if sys.can_add(e)? {
            sys.add(e)?;
        }
    }
    let solution: EdgeSet = sys.into_members();
    Ok(SolveReport {
        algorithm: "RT".into(),
        value: oracle.function().value(&solution),
        solution,
        oracle_calls: 0,
        wall_time: start.elapsed().as_secs_f64(),
        certificate: Certificate::new(Bound::None, Reference::Tour),
        trace: None,
        stages: Vec::new(),
    })
}

#[cfg(test)]
mod tests;
