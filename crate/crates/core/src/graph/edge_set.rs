use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use super::EdgeId;

/// A subset of the edge ids of one instance, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    words: Vec<u64>,
    universe: usize,
    len: usize,
}

impl EdgeSet {
    pub fn new(universe: usize) -> Self {
        EdgeSet { words: vec![0; universe.div_ceil(64)], universe, len: 0 }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = EdgeSet::new(universe);
        for i in 0..universe {
            s.insert(EdgeId::from(i));
        }
        s
    }

    pub fn from_ids<I: IntoIterator<Item = EdgeId>>(universe: usize, ids: I) -> Self {
        let mut s = EdgeSet::new(universe);
        for e in ids {
            s.insert(e);
        }
        s
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        let i = e.index();
        i < self.universe && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    /// Adds `e`; returns whether it was newly inserted.
    ///
    /// Panics if `e` is outside the universe.
    pub fn insert(&mut self, e: EdgeId) -> bool {
        let i = e.index();
        assert!(i < self.universe, "edge {i} outside universe of size {}", self.universe);
        let bit = 1u64 << (i % 64);
        let w = &mut self.words[i / 64];
        if *w & bit == 0 {
            *w |= bit;
            self.len += 1;
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, e: EdgeId) -> bool {
        let i = e.index();
        if i >= self.universe {
            return false;
        }
        let bit = 1u64 << (i % 64);
        let w = &mut self.words[i / 64];
        if *w & bit != 0 {
            *w &= !bit;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    /// Members in increasing id order.
    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(EdgeId::from(wi * 64 + t))
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<EdgeId> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        self.zip_with(other, |a, b| a & !b)
    }

    fn zip_with(&self, other: &EdgeSet, op: impl Fn(u64, u64) -> u64) -> EdgeSet {
        assert_eq!(self.universe, other.universe, "edge sets over different universes");
        let words: Vec<u64> = self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect();
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        EdgeSet { words, universe: self.universe, len }
    }

    /// Lexicographic comparison of the sorted member lists.
    pub fn lex_cmp(&self, other: &EdgeSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e.0)).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeSetRepr {
    universe: usize,
    edges: Vec<EdgeId>,
}

impl Serialize for EdgeSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        EdgeSetRepr { universe: self.universe, edges: self.to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EdgeSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = EdgeSetRepr::deserialize(d)?;
        if let Some(bad) = r.edges.iter().find(|e| e.index() >= r.universe) {
            return Err(serde::de::Error::custom(format!("edge {} outside universe {}", bad.0, r.universe)));
        }
        Ok(EdgeSet::from_ids(r.universe, r.edges))
    }
}
