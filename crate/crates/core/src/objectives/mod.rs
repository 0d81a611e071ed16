//! Value oracles and the reward functions used by the solvers.
//!
//! A [`SetFunction`] is a pure map from edge sets to reals. Solvers never call
//! it directly; they go through a [`ValueOracle`], which counts every
//! evaluation. Oracle-call counts are the effort metric reported by every
//! solver, so all evaluations that an algorithm performs must go through
//! [`ValueOracle::evaluate`] or [`ValueOracle::evaluate_with`].

mod cost;
mod coverage;
mod curvature;
mod modular;
mod spec;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{contract, Result};
use crate::graph::{EdgeId, EdgeSet};

pub use cost::{CombinedCostObjective, CostMode, ModularBonus};
pub use coverage::{CoverageObjective, Grid};
pub use curvature::{curvature, kappa_i_estimate, CurvatureReport, KAPPA_SNAP};
pub(crate) use curvature::kappa_from_ratio;
pub use modular::ModularObjective;
pub use spec::{CostSpec, ObjectiveSpec};

/// A set function over the edge ids `0..ground_size()`.
pub trait SetFunction: Send + Sync + fmt::Debug {
    fn ground_size(&self) -> usize;

    fn value(&self, s: &EdgeSet) -> f64;

    /// `value(s ∪ {extra})`. Implementations must return exactly what
    /// `value` would return on the enlarged set.
    fn value_with(&self, s: &EdgeSet, extra: EdgeId) -> f64 {
        let mut t = s.clone();
        t.insert(extra);
        self.value(&t)
    }

    /// Whether the function is known to be monotone non-decreasing.
    fn is_monotone(&self) -> bool {
        true
    }
}

/// Counting wrapper around a shared [`SetFunction`].
pub struct ValueOracle {
    f: Arc<dyn SetFunction>,
    calls: AtomicU64,
}

impl ValueOracle {
    pub fn new<F: SetFunction + 'static>(f: F) -> Self {
        Self::from_arc(Arc::new(f))
    }

    pub fn from_arc(f: Arc<dyn SetFunction>) -> Self {
        ValueOracle { f, calls: AtomicU64::new(0) }
    }

    /// A new oracle over the same function with its own zeroed counter.
    pub fn fork(&self) -> Self {
        Self::from_arc(Arc::clone(&self.f))
    }

    pub fn function(&self) -> &Arc<dyn SetFunction> {
        &self.f
    }

    pub fn ground_size(&self) -> usize {
        self.f.ground_size()
    }

    pub fn is_monotone(&self) -> bool {
        self.f.is_monotone()
    }

    /// Number of evaluations performed so far.
    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    fn check(&self, s: &EdgeSet) -> Result<()> {
        if s.universe() != self.f.ground_size() {
            return Err(contract(format!(
                "edge set over {} ids evaluated by an oracle over {}",
                s.universe(),
                self.f.ground_size()
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, s: &EdgeSet) -> Result<f64> {
        self.check(s)?;
        self.calls.fetch_add(1, Ordering::Relaxed);
        Ok(self.f.value(s))
    }

    /// One counted evaluation of `s ∪ {e}`.
    pub fn evaluate_with(&self, s: &EdgeSet, e: EdgeId) -> Result<f64> {
        self.check(s)?;
        if e.index() >= self.f.ground_size() {
            return Err(contract(format!("edge id {} out of range", e.0)));
        }
        self.calls.fetch_add(1, Ordering::Relaxed);
        Ok(self.f.value_with(s, e))
    }

    /// `f({e})`.
    pub fn singleton(&self, e: EdgeId) -> Result<f64> {
        self.evaluate_with(&EdgeSet::new(self.ground_size()), e)
    }

    /// `f(s ∪ {e}) - f(s)` with two counted evaluations; `e` must not be in `s`.
    pub fn marginal(&self, s: &EdgeSet, e: EdgeId) -> Result<f64> {
        if s.contains(e) {
            return Err(contract(format!("marginal of {e} which is already in the set")));
        }
        let base = self.evaluate(s)?;
        Ok(self.evaluate_with(s, e)? - base)
    }
}

impl fmt::Debug for ValueOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ValueOracle").field("f", &self.f).field("calls", &self.calls()).finish()
    }
}

/// Plain sum in increasing id order of `weights` over `s`, optionally with one
/// extra id merged in at its sorted position.
pub(crate) fn ordered_sum(weights: &[f64], s: &EdgeSet, extra: Option<EdgeId>) -> f64 {
    let mut total = 0.0;
    let mut pending = extra.filter(|e| !s.contains(*e));
    for e in s.iter() {
        if let Some(x) = pending {
            if x < e {
                total += weights[x.index()];
                pending = None;
            }
        }
        total += weights[e.index()];
    }
    if let Some(x) = pending {
        total += weights[x.index()];
    }
    total
}
