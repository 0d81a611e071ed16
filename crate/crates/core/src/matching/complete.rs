//! Closing a set of vertex-disjoint paths into a Hamiltonian tour.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{decompose_matching, ComponentKind, EdgeSet, IndependenceSystem, Instance, SystemKind};
use crate::greedy::{extend_greedily, Strategy};
use crate::objectives::ValueOracle;
use crate::rng::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Completion {
    /// Greedy tour construction seeded with the partial set.
    Greedy,
    /// Paths and isolated vertices joined in a seeded random order.
    Arbitrary,
}

impl fmt::Display for Completion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Completion::Greedy => "greedy",
            Completion::Arbitrary => "arbitrary",
        })
    }
}

impl FromStr for Completion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "greedy" => Ok(Completion::Greedy),
            "arbitrary" => Ok(Completion::Arbitrary),
            _ => Err(Error::Config(format!("unknown completion '{s}'"))),
        }
    }
}

fn tour_kind(inst: &Instance) -> SystemKind {
    if inst.is_directed() {
        SystemKind::TspDirected
    } else {
        SystemKind::TspUndirected
    }
}

/// A Hamiltonian tour containing `partial`, which must be independent in the
/// tour system (vertex-disjoint paths, or already a tour).
///
/// `seed` only matters for [`Completion::Arbitrary`]; it decides both the
/// order of the pieces and, undirected, the direction each path is walked.
pub fn complete_tour(
    inst: &Instance,
    oracle: &ValueOracle,
    partial: &EdgeSet,
    mode: Completion,
    seed: u64,
) -> Result<EdgeSet> {
    let mut sys = IndependenceSystem::with_edges(tour_kind(inst), inst, partial)?;
    if sys.is_maximal() {
        return Ok(sys.into_members());
    }
    match mode {
        Completion::Greedy => {
            extend_greedily(oracle, &mut sys, Strategy::Lazy)?;
            Ok(sys.into_members())
        }
        Completion::Arbitrary => join_randomly(inst, partial, seed),
    }
}

fn join_randomly(inst: &Instance, partial: &EdgeSet, seed: u64) -> Result<EdgeSet> {
    let n = inst.n();
    let mut covered = vec![false; n];
    let mut pieces: Vec<Vec<usize>> = Vec::new();
    for c in decompose_matching(inst, partial)? {
        debug_assert_eq!(c.kind, ComponentKind::Path);
        for &v in &c.vertices {
            covered[v] = true;
        }
        pieces.push(c.vertices);
    }
    pieces.extend((0..n).filter(|&v| !covered[v]).map(|v| vec![v]));
    let mut rng = Rng::new(seed);
    rng.shuffle(&mut pieces);
    if !inst.is_directed() {
        for p in &mut pieces {
            if p.len() > 1 && rng.below(2) == 1 {
                p.reverse();
            }
        }
    }
    let order: Vec<usize> = pieces.into_iter().flatten().collect();
    let tour = inst.cycle_edges(&order)?;
    debug_assert!(partial.is_subset(&tour));
    Ok(tour)
}
