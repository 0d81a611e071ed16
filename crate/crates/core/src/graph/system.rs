use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use super::{EdgeId, EdgeSet, Instance};
use crate::error::{contract, Error, Result};

/// Union-find over vertices with path halving and union by size.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; returns false if they were already one.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemKind {
    /// Vertex-disjoint simple paths, or one Hamiltonian cycle.
    TspUndirected,
    /// Vertex-disjoint directed paths, or one directed Hamiltonian cycle.
    TspDirected,
    /// Simple 2-matching: every vertex has degree at most 2.
    TwoMatching,
    /// In-degree and out-degree at most 1 (partial cycle covers).
    DegreeInOut,
}

impl SystemKind {
    pub fn is_directed(self) -> bool {
        matches!(self, SystemKind::TspDirected | SystemKind::DegreeInOut)
    }

    /// The p of the p-system / p-extendible bound used by greedy certificates.
    pub fn p(self, n: usize) -> f64 {
        match self {
            SystemKind::TspUndirected => 2.0 - 1.0 / n.div_ceil(2) as f64,
            SystemKind::TspDirected => 3.0,
            SystemKind::TwoMatching | SystemKind::DegreeInOut => 2.0,
        }
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemKind::TspUndirected => "tsp-undirected",
            SystemKind::TspDirected => "tsp-directed",
            SystemKind::TwoMatching => "two-matching",
            SystemKind::DegreeInOut => "degree-in-out",
        })
    }
}

impl FromStr for SystemKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsp-undirected" => Ok(SystemKind::TspUndirected),
            "tsp-directed" => Ok(SystemKind::TspDirected),
            "two-matching" => Ok(SystemKind::TwoMatching),
            "degree-in-out" => Ok(SystemKind::DegreeInOut),
            _ => Err(Error::Config(format!("unknown independence system '{s}'"))),
        }
    }
}

/// Incrementally grown independent set with O(α(n)) feasibility checks.
///
/// For undirected kinds `deg_a` holds the vertex degree; for directed kinds
/// `deg_a` is the out-degree and `deg_b` the in-degree. There is no removal:
/// callers that need a different set rebuild with [`IndependenceSystem::with_edges`].
#[derive(Clone, Debug)]
pub struct IndependenceSystem<'a> {
    inst: &'a Instance,
    kind: SystemKind,
    deg_a: Vec<u8>,
    deg_b: Vec<u8>,
    dsu: DisjointSets,
    members: EdgeSet,
}

impl<'a> IndependenceSystem<'a> {
    pub fn new(kind: SystemKind, inst: &'a Instance) -> Result<Self> {
        if kind.is_directed() != inst.is_directed() {
            return Err(Error::InvalidInstance(format!(
                "system {kind} needs a {} instance",
                if kind.is_directed() { "directed" } else { "undirected" }
            )));
        }
        let n = inst.n();
        Ok(IndependenceSystem {
            inst,
            kind,
            deg_a: vec![0; n],
            deg_b: vec![0; n],
            dsu: DisjointSets::new(n),
            members: inst.empty_set(),
        })
    }

    /// Builds the state for an existing set; fails if the set is dependent.
    pub fn with_edges(kind: SystemKind, inst: &'a Instance, edges: &EdgeSet) -> Result<Self> {
        let mut sys = IndependenceSystem::new(kind, inst)?;
        if edges.universe() != inst.edge_count() {
            return Err(contract("edge set universe does not match the instance"));
        }
        for e in edges.iter() {
            if !sys.can_add(e)? {
                return Err(contract(format!("edge set is not independent in {kind} (at {e})")));
            }
            sys.add_unchecked(e);
        }
        Ok(sys)
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn instance(&self) -> &'a Instance {
        self.inst
    }

    pub fn p(&self) -> f64 {
        self.kind.p(self.inst.n())
    }

    pub fn members(&self) -> &EdgeSet {
        &self.members
    }

    pub fn into_members(self) -> EdgeSet {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether `members ∪ {e}` is independent. Edges already present report false.
    pub fn can_add(&mut self, e: EdgeId) -> Result<bool> {
        self.inst.check_edge(e)?;
        if self.members.contains(e) {
            return Ok(false);
        }
        let (u, v) = self.inst.endpoints(e);
        let n = self.inst.n();
        let closes_tour = self.members.len() + 1 == n;
        Ok(match self.kind {
            SystemKind::TwoMatching => self.deg_a[u] < 2 && self.deg_a[v] < 2,
            SystemKind::DegreeInOut => self.deg_a[u] < 1 && self.deg_b[v] < 1,
            SystemKind::TspUndirected => {
                self.deg_a[u] < 2 && self.deg_a[v] < 2 && (closes_tour || !self.dsu.same(u, v))
            }
            SystemKind::TspDirected => {
                self.deg_a[u] < 1 && self.deg_b[v] < 1 && (closes_tour || !self.dsu.same(u, v))
            }
        })
    }

    /// Adds `e`, failing with a contract error if the result would be dependent.
    pub fn add(&mut self, e: EdgeId) -> Result<()> {
        if !self.can_add(e)? {
            return Err(contract(format!("adding {e} breaks independence in {}", self.kind)));
        }
        self.add_unchecked(e);
        Ok(())
    }

    fn add_unchecked(&mut self, e: EdgeId) {
        let (u, v) = self.inst.endpoints(e);
        self.deg_a[u] += 1;
        if self.kind.is_directed() {
            self.deg_b[v] += 1;
        } else {
            self.deg_a[v] += 1;
        }
        self.dsu.union(u, v);
        self.members.insert(e);
    }

    /// True when no further edge can be added.
    pub fn is_maximal(&mut self) -> bool {
        match self.kind {
            // On a complete graph every independent non-tour extends.
            SystemKind::TspUndirected | SystemKind::TspDirected => self.members.len() == self.inst.n(),
            _ => {
                let edges = self.inst.edge_count();
                !(0..edges).any(|i| self.can_add(EdgeId::from(i)).unwrap_or(false))
            }
        }
    }
}

/// From-scratch independence check by degree and cycle scans.
pub fn is_independent(kind: SystemKind, inst: &Instance, s: &EdgeSet) -> bool {
    let n = inst.n();
    let mut out = vec![0usize; n];
    let mut inn = vec![0usize; n];
    for e in s.iter() {
        let (u, v) = inst.endpoints(e);
        out[u] += 1;
        if kind.is_directed() {
            inn[v] += 1;
        } else {
            out[v] += 1;
        }
    }
    let cap = if kind.is_directed() { 1 } else { 2 };
    if out.iter().chain(inn.iter()).any(|&d| d > cap) {
        return false;
    }
    match kind {
        SystemKind::TwoMatching | SystemKind::DegreeInOut => true,
        _ => {
            if s.len() == n {
                return super::is_tour(inst, s);
            }
            // Degree-feasible with no cycle: a forest of paths.
            super::decompose_matching(inst, s)
                .map(|cs| cs.iter().all(|c| c.kind == super::ComponentKind::Path))
                .unwrap_or(false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;
    use proptest::prelude::*;

    fn id(inst: &Instance, u: usize, v: usize) -> EdgeId {
        inst.edge_id(u, v).unwrap()
    }

    #[test]
    fn empty_system_accepts_anything() {
        let inst = Instance::new(5, false).unwrap();
        for kind in [SystemKind::TspUndirected, SystemKind::TwoMatching] {
            let mut sys = IndependenceSystem::new(kind, &inst).unwrap();
            for e in inst.edges() {
                assert!(sys.can_add(e).unwrap());
            }
        }
    }

    #[test]
    fn short_cycle_rejected_tour_closure_allowed() {
        let inst = Instance::new(4, false).unwrap();
        let mut sys = IndependenceSystem::new(SystemKind::TspUndirected, &inst).unwrap();
        sys.add(id(&inst, 0, 1)).unwrap();
        sys.add(id(&inst, 1, 2)).unwrap();
        assert!(!sys.can_add(id(&inst, 0, 2)).unwrap());
        sys.add(id(&inst, 2, 3)).unwrap();
        assert!(sys.can_add(id(&inst, 0, 3)).unwrap());
        sys.add(id(&inst, 0, 3)).unwrap();
        assert!(sys.is_maximal());
    }

    #[test]
    fn two_matching_allows_subtours() {
        let inst = Instance::new(6, false).unwrap();
        let mut sys = IndependenceSystem::new(SystemKind::TwoMatching, &inst).unwrap();
        for (u, v) in [(0, 1), (1, 2), (0, 2)] {
            sys.add(id(&inst, u, v)).unwrap();
        }
        assert!(!sys.can_add(id(&inst, 0, 3)).unwrap());
        assert!(sys.can_add(id(&inst, 3, 4)).unwrap());
    }

    #[test]
    fn directed_degrees_and_two_cycle() {
        let inst = Instance::new(2, true).unwrap();
        let mut sys = IndependenceSystem::new(SystemKind::TspDirected, &inst).unwrap();
        sys.add(id(&inst, 0, 1)).unwrap();
        assert!(sys.can_add(id(&inst, 1, 0)).unwrap());
        sys.add(id(&inst, 1, 0)).unwrap();
        assert!(sys.is_maximal());

        let inst = Instance::new(4, true).unwrap();
        let mut sys = IndependenceSystem::new(SystemKind::TspDirected, &inst).unwrap();
        sys.add(id(&inst, 0, 1)).unwrap();
        assert!(!sys.can_add(id(&inst, 1, 0)).unwrap());
        assert!(!sys.can_add(id(&inst, 0, 2)).unwrap());
        assert!(!sys.can_add(id(&inst, 2, 1)).unwrap());
        let mut cover = IndependenceSystem::new(SystemKind::DegreeInOut, &inst).unwrap();
        cover.add(id(&inst, 0, 1)).unwrap();
        assert!(cover.can_add(id(&inst, 1, 0)).unwrap());
    }

    #[test]
    fn invalid_edge_is_contract_error() {
        let inst = Instance::new(4, false).unwrap();
        let mut sys = IndependenceSystem::new(SystemKind::TspUndirected, &inst).unwrap();
        assert!(matches!(sys.can_add(EdgeId(6)), Err(Error::Contract(_))));
        assert!(IndependenceSystem::new(SystemKind::TspDirected, &inst).is_err());
    }

    #[test]
    fn p_values() {
        for n in 3usize..=100 {
            let expected = 2.0 - 1.0 / n.div_ceil(2) as f64;
            assert_eq!(SystemKind::TspUndirected.p(n), expected);
            assert!(expected < 2.0);
        }
        assert_eq!(SystemKind::TwoMatching.p(10), 2.0);
        assert_eq!(SystemKind::TspDirected.p(10), 3.0);
        assert_eq!(SystemKind::TspUndirected.p(3), 1.5);
        assert_eq!(SystemKind::TspUndirected.p(5), 2.0 - 1.0 / 3.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn incremental_matches_scan(n in 3usize..9, seed in any::<u64>(), kind_ix in 0usize..4) {
            let kind = [SystemKind::TspUndirected, SystemKind::TwoMatching,
                        SystemKind::TspDirected, SystemKind::DegreeInOut][kind_ix];
            let inst = Instance::new(n, kind.is_directed()).unwrap();
            let mut order: Vec<EdgeId> = inst.edges().collect();
            Rng::new(seed).shuffle(&mut order);
            let mut sys = IndependenceSystem::new(kind, &inst).unwrap();
            for e in order {
                let mut probe = sys.members().clone();
                probe.insert(e);
                let expect = is_independent(kind, &inst, &probe);
                prop_assert_eq!(sys.can_add(e).unwrap(), expect);
                if expect {
                    sys.add(e).unwrap();
                }
                prop_assert!(is_independent(kind, &inst, sys.members()));
            }
            prop_assert!(sys.is_maximal());
            if matches!(kind, SystemKind::TspUndirected | SystemKind::TspDirected) {
                prop_assert!(crate::graph::is_tour(&inst, sys.members()));
            }
        }
    }
}
