//! Maximum-reward Hamiltonian tours when the reward of a set of edges is a
//! monotone submodular function.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: complete (di)graphs, edge sets, the incremental independence
//!   systems (tour, simple 2-matching, in/out degree) and component
//!   decomposition.
//! * [`objectives`]: the counted value oracle, concrete reward functions
//!   (modular, rectangle coverage, reward/cost combinations) and curvature.
//! * [`greedy`]: naive and lazy greedy over an independence system, the greedy
//!   tour, greedy 2-matching, directed variants and the random-order baseline.
//! * [`matching`]: exact max-weight 2-matching / assignment, subtour reduction,
//!   tour completion and the full 2-matching tour pipeline.
//! * [`exact`]: brute-force optima for small instances and certificate checks.
//! * [`bench`]: instance generation, experiment drivers and result emission.

pub mod bench;
pub mod error;
pub mod exact;
pub mod graph;
pub mod greedy;
pub mod matching;
pub mod objectives;
pub mod report;
pub mod rng;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use graph::{Component, ComponentKind, EdgeId, EdgeSet, IndependenceSystem, Instance, SystemKind};
pub use greedy::{GreedyOptions, Strategy};
pub use objectives::{SetFunction, ValueOracle};
pub use report::{Bound, Certificate, Reference, SolveReport};
