//! 2-matching relaxations and the matching-based tour pipeline.
//!
//! The pipeline takes a simple 2-matching (greedy, or exact for the modular
//! surrogate `w̃(S) = Σ_{e∈S} f({e})`), removes one edge from every cycle and
//! closes the resulting paths into a tour. Directed instances use
//! in/out-degree-one sets and assignments in place of 2-matchings.

mod blossom;
mod complete;
mod hungarian;
mod pipeline;
mod reduce;
mod two_matching;

pub use blossom::max_weight_matching;
pub use complete::{complete_tour, Completion};
pub use hungarian::{assignment_arcs, max_assignment};
pub use pipeline::{
    chosen_matching_value, linear_relaxation_matching, matching_pipeline, MatchingSource, PipelineConfig, Reduction,
};
pub use reduce::{best_edge_reduction, reduce_matching, reduce_set};
pub use two_matching::max_weight_two_matching;
