//! Complete graphs, edge subsets and the independence systems built on them.
//!
//! Edge ids are dense and fixed by the vertex count:
//!
//! * undirected: all pairs `(i, j)` with `i < j`, in lexicographic order, so
//!   `{0,1}, {0,2}, ..., {0,n-1}, {1,2}, ...`;
//! * directed: all arcs `(tail, head)` with `tail != head`, in lexicographic
//!   order, so `(0,1), (0,2), ..., (0,n-1), (1,0), (1,2), ...`.
//!
//! Every tie-break downstream ("lowest edge id wins") refers to this order.

mod components;
mod edge_set;
mod system;

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

pub use components::{decompose_matching, is_tour, Component, ComponentKind};
pub use edge_set::EdgeSet;
pub use system::{is_independent, DisjointSets, IndependenceSystem, SystemKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for EdgeId {
    fn from(i: usize) -> Self {
        EdgeId(i as u32)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A complete graph or complete digraph without self-loops.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    n: usize,
    directed: bool,
    coords: Option<Vec<[f64; 2]>>,
    endpoints: Vec<(u32, u32)>,
}

impl Instance {
    pub fn new(n: usize, directed: bool) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInstance(format!("need at least 2 vertices, got {n}")));
        }
        if n > 1 << 15 {
            return Err(Error::InvalidInstance(format!("vertex count {n} too large")));
        }
        let mut endpoints = Vec::with_capacity(if directed { n * (n - 1) } else { n * (n - 1) / 2 });
        for i in 0..n {
            for j in 0..n {
                if (directed && i != j) || (!directed && i < j) {
                    endpoints.push((i as u32, j as u32));
                }
            }
        }
        Ok(Instance { n, directed, coords: None, endpoints })
    }

    pub fn with_coords(coords: Vec<[f64; 2]>, directed: bool) -> Result<Self> {
        let mut inst = Instance::new(coords.len(), directed)?;
        if coords.iter().any(|c| !c[0].is_finite() || !c[1].is_finite()) {
            return Err(Error::InvalidInstance("non-finite coordinate".into()));
        }
        inst.coords = Some(coords);
        Ok(inst)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_directed(&self) -> bool {
        self.directed
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn coords(&self) -> Option<&[[f64; 2]]> {
        self.coords.as_deref()
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = EdgeId> + '_ {
        (0..self.endpoints.len()).map(EdgeId::from)
    }

    /// `(u, v)` with `u < v` for undirected graphs, `(tail, head)` otherwise.
    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (usize, usize) {
        let (u, v) = self.endpoints[e.index()];
        (u as usize, v as usize)
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        e.index() < self.endpoints.len()
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(crate::error::contract(format!(
                "edge id {} out of range (|E| = {})",
                e.0,
                self.edge_count()
            )))
        }
    }

    /// Id of the edge between `u` and `v` (of the arc `u -> v` when directed).
    pub fn edge_id(&self, u: usize, v: usize) -> Option<EdgeId> {
        if u == v || u >= self.n || v >= self.n {
            return None;
        }
        let n = self.n;
        let idx = if self.directed {
            u * (n - 1) + if v < u { v } else { v - 1 }
        } else {
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            a * (2 * n - a - 1) / 2 + (b - a - 1)
        };
        Some(EdgeId::from(idx))
    }

    /// Euclidean length of an edge, zero when the instance has no coordinates.
    pub fn length(&self, e: EdgeId) -> f64 {
        match &self.coords {
            Some(c) => {
                let (u, v) = self.endpoints(e);
                let dx = c[u][0] - c[v][0];
                let dy = c[u][1] - c[v][1];
                dx.hypot(dy)
            }
            None => 0.0,
        }
    }

    pub fn empty_set(&self) -> EdgeSet {
        EdgeSet::new(self.edge_count())
    }

    /// Edge set of the closed walk through `order` (consecutive pairs plus the
    /// closing pair).
    pub fn cycle_edges(&self, order: &[usize]) -> Result<EdgeSet> {
        let mut s = self.empty_set();
        for k in 0..order.len() {
            let u = order[k];
            let v = order[(k + 1) % order.len()];
            let e = self
                .edge_id(u, v)
                .ok_or_else(|| crate::error::contract(format!("no edge between {u} and {v}")))?;
            s.insert(e);
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undirected_enumeration_is_lexicographic() {
        let inst = Instance::new(5, false).unwrap();
        assert_eq!(inst.edge_count(), 10);
        let mut prev = None;
        for e in inst.edges() {
            let (u, v) = inst.endpoints(e);
            assert!(u < v);
            if let Some(p) = prev {
                assert!(p < (u, v));
            }
            prev = Some((u, v));
            assert_eq!(inst.edge_id(u, v), Some(e));
            assert_eq!(inst.edge_id(v, u), Some(e));
        }
    }

    #[test]
    fn directed_enumeration_is_lexicographic() {
        let inst = Instance::new(4, true).unwrap();
        assert_eq!(inst.edge_count(), 12);
        for e in inst.edges() {
            let (t, h) = inst.endpoints(e);
            assert_ne!(t, h);
            assert_eq!(inst.edge_id(t, h), Some(e));
        }
        assert_eq!(inst.endpoints(EdgeId(3)), (1, 0));
    }

    #[test]
    fn edge_counts() {
        for n in 2..30 {
            assert_eq!(Instance::new(n, false).unwrap().edge_count(), n * (n - 1) / 2);
            assert_eq!(Instance::new(n, true).unwrap().edge_count(), n * (n - 1));
        }
        assert!(Instance::new(1, false).is_err());
    }

    #[test]
    fn lengths_from_coords() {
        let inst = Instance::with_coords(vec![[0.0, 0.0], [3.0, 4.0], [3.0, 0.0]], false).unwrap();
        assert_eq!(inst.length(inst.edge_id(0, 1).unwrap()), 5.0);
        assert_eq!(inst.length(inst.edge_id(1, 2).unwrap()), 4.0);
    }
}
