//! Tours built from a 2-matching: pick a matching, break its cycles, close it.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use super::complete::{complete_tour, Completion};
use super::hungarian::{assignment_arcs, max_assignment};
use super::reduce::{best_edge_reduction, reduce_matching};
use super::two_matching::max_weight_two_matching;
use crate::error::{Error, Result};
use crate::graph::Instance;
use crate::greedy::{greedy_matching, GreedyOptions};
use crate::objectives::ValueOracle;
use crate::report::{Bound, Certificate, Reference, SolveReport, Stage};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchingSource {
    Greedy,
    Linear,
    BestOfBoth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reduction {
    /// Drop the cheapest edge of each cycle.
    BestEdge,
    /// Aligned candidate probing.
    ReduceSet,
}

macro_rules! text_enum {
    ($t:ty, $($v:path => $s:literal),+) => {
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($v => $s),+ })
            }
        }
        impl FromStr for $t {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s.to_ascii_lowercase().as_str() {
                    $($s => Ok($v),)+
                    _ => Err(Error::Config(format!("unknown {} '{s}'", stringify!($t)))),
                }
            }
        }
    };
}

text_enum!(MatchingSource, MatchingSource::Greedy => "greedy", MatchingSource::Linear => "linear", MatchingSource::BestOfBoth => "best-of-both");
text_enum!(Reduction, Reduction::BestEdge => "best-edge", Reduction::ReduceSet => "reduceset");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub source: MatchingSource,
    pub reduction: Reduction,
    pub completion: Completion,
    /// Used by arbitrary completion.
    #[serde(default)]
    pub seed: u64,
}

impl PipelineConfig {
    pub fn new(source: MatchingSource, reduction: Reduction, completion: Completion) -> Self {
        PipelineConfig { source, reduction, completion, seed: 0 }
    }

    pub fn gm() -> Self {
        Self::new(MatchingSource::Greedy, Reduction::BestEdge, Completion::Greedy)
    }

    pub fn gm2() -> Self {
        Self::new(MatchingSource::Greedy, Reduction::ReduceSet, Completion::Greedy)
    }

    pub fn gm3() -> Self {
        Self::new(MatchingSource::Greedy, Reduction::ReduceSet, Completion::Arbitrary)
    }

    pub fn lg_matching() -> Self {
        Self::new(MatchingSource::BestOfBoth, Reduction::BestEdge, Completion::Greedy)
    }

    pub fn l_matching() -> Self {
        Self::new(MatchingSource::Linear, Reduction::BestEdge, Completion::Greedy)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn name(&self) -> String {
        let key = PipelineConfig { seed: 0, ..*self };
        let named = [
            (Self::gm(), "GM"),
            (Self::gm2(), "GM2"),
            (Self::gm3(), "GM3"),
            (Self::lg_matching(), "LGmatching"),
            (Self::l_matching(), "Lmatching"),
        ];
        match named.iter().find(|(c, _)| *c == key) {
            Some((_, name)) => name.to_string(),
            None => format!("pipeline({},{},{})", self.source, self.reduction, self.completion),
        }
    }
}

fn singleton_weights(inst: &Instance, oracle: &ValueOracle) -> Result<Vec<f64>> {
    let empty = inst.empty_set();
    inst.edges().map(|e| oracle.evaluate_with(&empty, e)).collect()
}

/// Best 2-matching (undirected) or cycle cover (directed) for the modular
/// surrogate `w̃(S) = Σ f({e})`, guaranteed `1-κ` of the best 2-matching or
/// cycle cover under `f`.
pub fn linear_relaxation_matching(inst: &Instance, oracle: &ValueOracle) -> Result<SolveReport> {
    let start = Instant::now();
    let calls = oracle.calls();
    let w = singleton_weights(inst, oracle)?;
    let (solution, reference) = if inst.is_directed() {
        let n = inst.n();
        let mut matrix = vec![vec![0.0; n]; n];
        for e in inst.edges() {
            let (u, v) = inst.endpoints(e);
            matrix[u][v] = w[e.index()];
        }
        (assignment_arcs(inst, &max_assignment(&matrix)?)?, Reference::Assignment)
    } else {
        (max_weight_two_matching(inst, &w)?, Reference::TwoMatching)
    };
    Ok(SolveReport {
        algorithm: "linear-matching".into(),
        value: oracle.function().value(&solution),
        solution,
        oracle_calls: oracle.calls() - calls,
        wall_time: start.elapsed().as_secs_f64(),
        certificate: Certificate::new(Bound::Linear, reference),
        trace: None,
        stages: Vec::new(),
    })
}

fn stage(name: &str, report: &SolveReport) -> Stage {
    Stage { name: name.into(), value: report.value, edges: report.solution.len(), reduce: None }
}

/// Matching, cycle breaking and completion in sequence.
///
/// The certificate is relative to the best 2-matching (undirected) or cycle
/// cover (directed): `max{2/(3(2+κ)), (2/3)(1-κ)}` undirected, where cycles
/// have at least three edges, and `max{1/(2(2+κ)), (1/2)(1-κ)}` directed,
/// where 2-cycles occur. Only the branches the source actually runs count.
pub fn matching_pipeline(inst: &Instance, oracle: &ValueOracle, cfg: &PipelineConfig) -> Result<SolveReport> {
    if !inst.is_directed() && inst.n() < 3 {
        return Err(Error::InvalidInstance(format!("a tour needs at least 3 vertices, got {}", inst.n())));
    }
    let start = Instant::now();
    let calls = oracle.calls();
    let mut stages = Vec::new();
    let matching = match cfg.source {
        MatchingSource::Greedy => {
            let g = greedy_matching(inst, oracle, GreedyOptions::default())?;
            stages.push(stage("greedy-matching", &g));
            g.solution
        }
        MatchingSource::Linear => {
            let l = linear_relaxation_matching(inst, oracle)?;
            stages.push(stage("linear-matching", &l));
            l.solution
        }
        MatchingSource::BestOfBoth => {
            let g = greedy_matching(inst, oracle, GreedyOptions::default())?;
            let l = linear_relaxation_matching(inst, oracle)?;
            stages.push(stage("greedy-matching", &g));
            stages.push(stage("linear-matching", &l));
            let gv = oracle.evaluate(&g.solution)?;
            let lv = oracle.evaluate(&l.solution)?;
            if lv > gv {
                l.solution
            } else {
                g.solution
            }
        }
    };
    let (reduced, outcome) = match cfg.reduction {
        Reduction::BestEdge => best_edge_reduction(inst, oracle, &matching)?,
        Reduction::ReduceSet => reduce_matching(inst, oracle, &matching)?,
    };
    stages.push(Stage {
        name: "reduced".into(),
        value: outcome.after,
        edges: reduced.len(),
        reduce: Some(outcome),
    });
    let tour = complete_tour(inst, oracle, &reduced, cfg.completion, cfg.seed)?;
    let value = oracle.function().value(&tour);
    stages.push(Stage { name: "tour".into(), value, edges: tour.len(), reduce: None });

    let (retain, reference) = if inst.is_directed() {
        (0.5, Reference::Assignment)
    } else {
        (2.0 / 3.0, Reference::TwoMatching)
    };
    let bound = Bound::Pipeline {
        retain,
        p: 2.0,
        greedy: cfg.source != MatchingSource::Linear,
        linear: cfg.source != MatchingSource::Greedy,
    };
    Ok(SolveReport {
        algorithm: cfg.name(),
        value,
        solution: tour,
        oracle_calls: oracle.calls() - calls,
        wall_time: start.elapsed().as_secs_f64(),
        certificate: Certificate::new(bound, reference),
        trace: None,
        stages,
    })
}

/// The matching chosen by a pipeline run, recovered from its stages.
pub fn chosen_matching_value(report: &SolveReport) -> Option<f64> {
    let values: Vec<f64> = report
        .stages
        .iter()
        .filter(|s| s.name.ends_with("-matching"))
        .map(|s| s.value)
        .collect();
    values.into_iter().reduce(f64::max)
}
