//! Exhaustive optima for small instances and checks of solver guarantees.
//!
//! Everything here enumerates: cyclic vertex orders for tours, degree-pruned
//! edge subsets for 2-matchings and in/out-degree sets, and permutations
//! without fixed points for assignments. Ties between optimal sets go to the
//! lexicographically smallest edge set, so results do not depend on the order
//! in which parallel branches finish.

mod verify;

pub use verify::{verify_certificates, AdditiveBound, Check, Verdict, VerifyOptions};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, Instance, SystemKind};
use crate::objectives::kappa_from_ratio;
use crate::objectives::ValueOracle;

/// Largest `n` for tour enumeration by default.
pub const TOUR_CAP: usize = 10;
/// Largest `n` for subset and permutation enumeration by default.
pub const SUBSET_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BruteForceResult {
    pub optimum: EdgeSet,
    pub value: f64,
    /// Number of candidate sets evaluated.
    pub enumerated: u64,
}

/// What to maximise: the oracle's set function or a modular weight vector.
#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    Oracle(&'a ValueOracle),
    Weights(&'a [f64]),
}

impl Target<'_> {
    fn value(&self, s: &EdgeSet) -> Result<f64> {
        match self {
            Target::Oracle(o) => o.evaluate(s),
            Target::Weights(w) => Ok(s.iter().map(|e| w[e.index()]).sum()),
        }
    }

    fn check(&self, inst: &Instance) -> Result<()> {
        let len = match self {
            Target::Oracle(o) => o.ground_size(),
            Target::Weights(w) => w.len(),
        };
        if len != inst.edge_count() {
            return Err(crate::error::contract(format!("{len} values for {} edges", inst.edge_count())));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Best {
    value: f64,
    set: Option<EdgeSet>,
    count: u64,
}

impl Best {
    fn new() -> Self {
        Best { value: f64::NEG_INFINITY, set: None, count: 0 }
    }

    fn offer(&mut self, value: f64, set: &EdgeSet) {
        self.count += 1;
        let better = match &self.set {
            None => true,
            Some(cur) => value > self.value || (value == self.value && set.lex_cmp(cur) == Ordering::Less),
        };
        if better {
            self.value = value;
            self.set = Some(set.clone());
        }
    }

    fn merge(mut self, other: Best) -> Best {
        let count = self.count + other.count;
        if let Some(s) = &other.set {
            self.offer(other.value, s);
        }
        self.count = count;
        self
    }

    fn finish(self, inst: &Instance) -> BruteForceResult {
        BruteForceResult {
            optimum: self.set.unwrap_or_else(|| inst.empty_set()),
            value: if self.value.is_finite() { self.value } else { 0.0 },
            enumerated: self.count,
        }
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

/// Calls `visit` with every Hamiltonian cycle as a vertex order starting at 0;
/// undirected cycles are visited once (the order with `second < last`).
fn for_each_tour_from(
    inst: &Instance,
    prefix: &mut Vec<usize>,
    used: &mut [bool],
    visit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    let n = inst.n();
    if prefix.len() == n {
        if inst.is_directed() || n < 3 || prefix[1] < prefix[n - 1] {
            visit(prefix)?;
        }
        return Ok(());
    }
    for v in 1..n {
        if !used[v] {
            used[v] = true;
            prefix.push(v);
            for_each_tour_from(inst, prefix, used, visit)?;
            prefix.pop();
            used[v] = false;
        }
    }
    Ok(())
}

pub fn brute_force_tour(inst: &Instance, oracle: &ValueOracle) -> Result<BruteForceResult> {
    brute_force_tour_with_cap(inst, Target::Oracle(oracle), TOUR_CAP)
}

/// Best Hamiltonian cycle by enumeration of all `(n-1)!/2` (undirected) or
/// `(n-1)!` (directed) cycles. Parallel over the vertex following 0.
pub fn brute_force_tour_with_cap(inst: &Instance, target: Target<'_>, cap: usize) -> Result<BruteForceResult> {
    target.check(inst)?;
    check_cap(inst.n(), cap)?;
    let n = inst.n();
    if !inst.is_directed() && n < 3 {
        return Err(Error::InvalidInstance("a tour needs at least 3 vertices".into()));
    }
    let best = (1..n)
        .into_par_iter()
        .map(|second| -> Result<Best> {
            let mut best = Best::new();
            let mut used = vec![false; n];
            used[0] = true;
            used[second] = true;
            let mut prefix = vec![0, second];
            for_each_tour_from(inst, &mut prefix, &mut used, &mut |order| {
                let s = inst.cycle_edges(order)?;
                best.offer(target.value(&s)?, &s);
                Ok(())
            })?;
            Ok(best)
        })
        .collect::<Result<Vec<Best>>>()?
        .into_iter()
        .fold(Best::new(), Best::merge);
    Ok(best.finish(inst))
}

/// Visits every set that is independent for a degree-only system
/// ([`SystemKind::TwoMatching`] or [`SystemKind::DegreeInOut`]); `maximal`
/// tells whether no further edge fits.
fn for_each_degree_set(
    inst: &Instance,
    kind: SystemKind,
    visit: &mut dyn FnMut(&EdgeSet, bool) -> Result<()>,
) -> Result<()> {
    let n = inst.n();
    let directed = kind == SystemKind::DegreeInOut;
    let cap = if directed { 1 } else { 2 };
    let mut out = vec![0u8; n];
    let mut inn = vec![0u8; n];
    let mut set = inst.empty_set();

    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        inst: &Instance,
        directed: bool,
        cap: u8,
        out: &mut [u8],
        inn: &mut [u8],
        set: &mut EdgeSet,
        visit: &mut dyn FnMut(&EdgeSet, bool) -> Result<()>,
    ) -> Result<()> {
        let fits = |out: &[u8], inn: &[u8], e: EdgeId| {
            let (u, v) = inst.endpoints(e);
            if directed {
                out[u] < cap && inn[v] < cap
            } else {
                out[u] < cap && out[v] < cap
            }
        };
        if k == inst.edge_count() {
            let maximal = !inst.edges().any(|e| !set.contains(e) && fits(out, inn, e));
            return visit(set, maximal);
        }
        go(k + 1, inst, directed, cap, out, inn, set, visit)?;
        let e = EdgeId::from(k);
        if fits(out, inn, e) {
            let (u, v) = inst.endpoints(e);
            out[u] += 1;
            if directed {
                inn[v] += 1;
            } else {
                out[v] += 1;
            }
            set.insert(e);
            go(k + 1, inst, directed, cap, out, inn, set, visit)?;
            set.remove(e);
            out[u] -= 1;
            if directed {
                inn[v] -= 1;
            } else {
                out[v] -= 1;
            }
        }
        Ok(())
    }
    go(0, inst, directed, cap, &mut out, &mut inn, &mut set, visit)
}

pub fn brute_force_two_matching(inst: &Instance, target: Target<'_>) -> Result<BruteForceResult> {
    brute_force_degree_sets(inst, target, SUBSET_CAP)
}

/// Best simple 2-matching (undirected) or in/out-degree-one arc set
/// (directed) over every such set, maximal or not.
pub fn brute_force_degree_sets(inst: &Instance, target: Target<'_>, cap: usize) -> Result<BruteForceResult> {
    target.check(inst)?;
    check_cap(inst.n(), cap)?;
    let kind = if inst.is_directed() { SystemKind::DegreeInOut } else { SystemKind::TwoMatching };
    let mut best = Best::new();
    for_each_degree_set(inst, kind, &mut |s, _| {
        best.offer(target.value(s)?, s);
        Ok(())
    })?;
    Ok(best.finish(inst))
}

pub fn brute_force_assignment(inst: &Instance, target: Target<'_>) -> Result<BruteForceResult> {
    brute_force_assignment_with_cap(inst, target, SUBSET_CAP)
}

/// Best cycle cover of a digraph: the permutation without fixed points
/// maximising the target over its arc set.
pub fn brute_force_assignment_with_cap(inst: &Instance, target: Target<'_>, cap: usize) -> Result<BruteForceResult> {
    target.check(inst)?;
    check_cap(inst.n(), cap)?;
    if !inst.is_directed() {
        return Err(crate::error::contract("assignments live on directed instances"));
    }
    let n = inst.n();
    let mut best = Best::new();
    let mut used = vec![false; n];
    let mut set = inst.empty_set();
    fn go(
        i: usize,
        inst: &Instance,
        used: &mut [bool],
        set: &mut EdgeSet,
        target: &Target<'_>,
        best: &mut Best,
    ) -> Result<()> {
        let n = inst.n();
        if i == n {
            best.offer(target.value(set)?, set);
            return Ok(());
        }
        for j in 0..n {
            if j != i && !used[j] {
                let e = inst.edge_id(i, j).expect("arc exists");
                used[j] = true;
                set.insert(e);
                go(i + 1, inst, used, set, target, best)?;
                set.remove(e);
                used[j] = false;
            }
        }
        Ok(())
    }
    go(0, inst, &mut used, &mut set, &target, &mut best)?;
    Ok(best.finish(inst))
}

/// Independence-system curvature by enumerating every basis `B` of the
/// system: `κ_I = 1 - min_{B, e∈B} Δ_{B∖e}(e) / f({e})`.
pub fn kappa_i_exhaustive(inst: &Instance, oracle: &ValueOracle, kind: SystemKind) -> Result<f64> {
    if kind.is_directed() != inst.is_directed() {
        return Err(Error::InvalidInstance(format!("system {kind} does not match the instance")));
    }
    let cap = match kind {
        SystemKind::TspUndirected | SystemKind::TspDirected => TOUR_CAP - 2,
        _ => SUBSET_CAP - 1,
    };
    check_cap(inst.n(), cap)?;
    let empty = inst.empty_set();
    let singles: Vec<f64> = inst.edges().map(|e| oracle.evaluate_with(&empty, e)).collect::<Result<_>>()?;
    let mut min_ratio = f64::INFINITY;
    let mut score = |basis: &EdgeSet| -> Result<()> {
        let fb = oracle.evaluate(basis)?;
        let mut rest = basis.clone();
        for e in basis.iter() {
            if singles[e.index()] <= 0.0 {
                continue;
            }
            rest.remove(e);
            min_ratio = min_ratio.min((fb - oracle.evaluate(&rest)?) / singles[e.index()]);
            rest.insert(e);
        }
        Ok(())
    };
    match kind {
        SystemKind::TspUndirected | SystemKind::TspDirected => {
            let n = inst.n();
            let mut used = vec![false; n];
            used[0] = true;
            for_each_tour_from(inst, &mut vec![0], &mut used, &mut |order| score(&inst.cycle_edges(order)?))?;
        }
        _ => for_each_degree_set(inst, kind, &mut |s, maximal| if maximal { score(s) } else { Ok(()) })?,
    }
    Ok(if min_ratio.is_finite() { kappa_from_ratio(min_ratio) } else { 0.0 })
}
