use serde::{Deserialize, Serialize};

use super::{EdgeId, EdgeSet, Instance};
use crate::error::{contract, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    Subtour,
    Path,
}

/// A connected piece of a degree-bounded edge set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub kind: ComponentKind,
    /// Edges in traversal order.
    pub edges: Vec<EdgeId>,
    /// Vertices in traversal order; for a subtour the first vertex is not repeated.
    pub vertices: Vec<usize>,
}

impl Component {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Splits a degree-feasible edge set into cycles and paths.
///
/// Undirected sets need degree ≤ 2 everywhere; directed sets need in- and
/// out-degree ≤ 1. Components are ordered by their smallest vertex. A
/// component that visits every vertex and closes is still labelled
/// [`ComponentKind::Subtour`]; callers distinguish tours by length.
pub fn decompose_matching(inst: &Instance, m: &EdgeSet) -> Result<Vec<Component>> {
    if m.universe() != inst.edge_count() {
        return Err(contract("edge set universe does not match the instance"));
    }
    let n = inst.n();
    // succ/pred for directed; two neighbour slots for undirected
    let mut adj: Vec<[Option<(usize, EdgeId)>; 2]> = vec![[None, None]; n];
    for e in m.iter() {
        let (u, v) = inst.endpoints(e);
        if inst.is_directed() {
            if adj[u][0].is_some() || adj[v][1].is_some() {
                return Err(contract(format!("in/out degree above 1 at arc {e}")));
            }
            adj[u][0] = Some((v, e));
            adj[v][1] = Some((u, e));
        } else {
            for (a, b) in [(u, v), (v, u)] {
                let slot = adj[a]
                    .iter_mut()
                    .find(|s| s.is_none())
                    .ok_or_else(|| contract(format!("vertex {a} has degree above 2")))?;
                *slot = Some((b, e));
            }
        }
    }

    let mut seen = vec![false; n];
    let mut out = Vec::new();

    // Paths first, walked from an endpoint so edge order is traversal order.
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let is_start = if inst.is_directed() {
            adj[s][1].is_none() && adj[s][0].is_some()
        } else {
            adj[s].iter().filter(|x| x.is_some()).count() == 1
        };
        if !is_start {
            continue;
        }
        let mut comp = Component { kind: ComponentKind::Path, edges: vec![], vertices: vec![s] };
        seen[s] = true;
        let mut prev_edge: Option<EdgeId> = None;
        let mut cur = s;
        loop {
            let next = next_step(inst, &adj[cur], prev_edge);
            match next {
                Some((w, e)) if !seen[w] => {
                    comp.edges.push(e);
                    comp.vertices.push(w);
                    seen[w] = true;
                    prev_edge = Some(e);
                    cur = w;
                }
                _ => break,
            }
        }
        out.push(comp);
    }

    for s in 0..n {
        if seen[s] || adj[s].iter().all(|x| x.is_none()) {
            continue;
        }
        let mut comp = Component { kind: ComponentKind::Subtour, edges: vec![], vertices: vec![s] };
        seen[s] = true;
        let mut prev_edge: Option<EdgeId> = None;
        let mut cur = s;
        loop {
            let (w, e) = next_step(inst, &adj[cur], prev_edge)
                .ok_or_else(|| contract("inconsistent adjacency while walking a cycle"))?;
            comp.edges.push(e);
            prev_edge = Some(e);
            if w == s {
                break;
            }
            seen[w] = true;
            comp.vertices.push(w);
            cur = w;
        }
        out.push(comp);
    }

    out.sort_by_key(|c| c.vertices.iter().copied().min().unwrap_or(usize::MAX));
    Ok(out)
}

fn next_step(
    inst: &Instance,
    slots: &[Option<(usize, EdgeId)>; 2],
    prev: Option<EdgeId>,
) -> Option<(usize, EdgeId)> {
    if inst.is_directed() {
        slots[0]
    } else {
        slots.iter().flatten().copied().find(|&(_, e)| Some(e) != prev)
    }
}

/// True iff `s` is a single Hamiltonian cycle of the instance.
pub fn is_tour(inst: &Instance, s: &EdgeSet) -> bool {
    if s.universe() != inst.edge_count() || s.len() != inst.n() {
        return false;
    }
    match decompose_matching(inst, s) {
        Ok(cs) => cs.len() == 1 && cs[0].kind == ComponentKind::Subtour && cs[0].vertices.len() == inst.n(),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;
    use proptest::prelude::*;

    fn set(inst: &Instance, pairs: &[(usize, usize)]) -> EdgeSet {
        EdgeSet::from_ids(inst.edge_count(), pairs.iter().map(|&(u, v)| inst.edge_id(u, v).unwrap()))
    }

    #[test]
    fn four_cycle() {
        let inst = Instance::new(6, false).unwrap();
        let cs = decompose_matching(&inst, &set(&inst, &[(0, 1), (1, 2), (2, 3), (0, 3)])).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].kind, ComponentKind::Subtour);
        assert_eq!(cs[0].len(), 4);
    }

    #[test]
    fn cycle_plus_edge() {
        let inst = Instance::new(6, false).unwrap();
        let m = set(&inst, &[(0, 1), (1, 2), (2, 3), (0, 3), (4, 5)]);
        let cs = decompose_matching(&inst, &m).unwrap();
        let kinds: Vec<_> = cs.iter().map(|c| (c.kind, c.len())).collect();
        assert_eq!(kinds, vec![(ComponentKind::Subtour, 4), (ComponentKind::Path, 1)]);
    }

    #[test]
    fn hamiltonian_tour() {
        let inst = Instance::new(5, false).unwrap();
        let t = inst.cycle_edges(&[0, 2, 4, 1, 3]).unwrap();
        let cs = decompose_matching(&inst, &t).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].len(), 5);
        assert!(is_tour(&inst, &t));
    }

    #[test]
    fn traversal_order_is_contiguous() {
        let inst = Instance::new(7, false).unwrap();
        let m = set(&inst, &[(0, 4), (4, 2), (2, 6), (1, 3), (3, 5)]);
        for c in decompose_matching(&inst, &m).unwrap() {
            for (k, e) in c.edges.iter().enumerate() {
                let (u, v) = inst.endpoints(*e);
                let a = c.vertices[k];
                let b = c.vertices[(k + 1) % c.vertices.len()];
                assert!((u, v) == (a, b) || (u, v) == (b, a));
            }
        }
    }

    #[test]
    fn not_tours() {
        let inst = Instance::new(6, false).unwrap();
        assert!(!is_tour(&inst, &set(&inst, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])));
        assert!(!is_tour(&inst, &set(&inst, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])));
    }

    #[test]
    fn degree_violation() {
        let inst = Instance::new(5, false).unwrap();
        let m = set(&inst, &[(0, 1), (0, 2), (0, 3)]);
        assert!(decompose_matching(&inst, &m).is_err());
    }

    #[test]
    fn directed_two_cycle_and_tour() {
        let inst = Instance::new(4, true).unwrap();
        let m = set(&inst, &[(0, 1), (1, 0), (2, 3)]);
        let cs = decompose_matching(&inst, &m).unwrap();
        assert_eq!(cs[0].kind, ComponentKind::Subtour);
        assert_eq!(cs[0].len(), 2);
        assert_eq!(cs[1].kind, ComponentKind::Path);
        let t = inst.cycle_edges(&[0, 2, 1, 3]).unwrap();
        assert!(is_tour(&inst, &t));
        let rev = inst.cycle_edges(&[0, 3, 1, 2]).unwrap();
        assert!(is_tour(&inst, &rev));
        assert!(decompose_matching(&inst, &set(&inst, &[(0, 1), (0, 2)])).is_err());
    }

    proptest! {
        #[test]
        fn components_partition_edges(n in 3usize..12, seed in any::<u64>(), directed in any::<bool>()) {
            let inst = Instance::new(n, directed).unwrap();
            let kind = if directed { crate::graph::SystemKind::DegreeInOut } else { crate::graph::SystemKind::TwoMatching };
            let mut order: Vec<EdgeId> = inst.edges().collect();
            let mut rng = Rng::new(seed);
            rng.shuffle(&mut order);
            let keep = rng.below(order.len() as u64 + 1) as usize;
            let mut sys = crate::graph::IndependenceSystem::new(kind, &inst).unwrap();
            for e in order.into_iter().take(keep) {
                if sys.can_add(e).unwrap() { sys.add(e).unwrap(); }
            }
            let m = sys.members().clone();
            let cs = decompose_matching(&inst, &m).unwrap();
            let mut all: Vec<EdgeId> = cs.iter().flat_map(|c| c.edges.iter().copied()).collect();
            all.sort();
            prop_assert_eq!(all, m.to_vec());
            let mut verts: Vec<usize> = cs.iter().flat_map(|c| c.vertices.iter().copied()).collect();
            let total = verts.len();
            verts.sort_unstable();
            verts.dedup();
            prop_assert_eq!(verts.len(), total);
            for c in &cs {
                match c.kind {
                    ComponentKind::Subtour => {
                        prop_assert_eq!(c.vertices.len(), c.edges.len());
                        let min_len = if directed { 2 } else { 3 };
                        prop_assert!(c.len() >= min_len);
                    }
                    ComponentKind::Path => prop_assert_eq!(c.vertices.len(), c.edges.len() + 1),
                }
            }
        }
    }
}
