//! Algorithm comparison over seeded instance batches.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

use super::config::{Algorithm, ExperimentConfig};
use super::generate::generate_instance;
use crate::error::{Error, Result};
use crate::graph::{is_tour, Instance};
use crate::greedy::{greedy_tour, greedy_tour_directed, random_tour, GreedyOptions};
use crate::matching::matching_pipeline;
use crate::objectives::{SetFunction, ValueOracle};
use crate::report::SolveReport;
use crate::rng::derive_seed;

/// Relative tolerance under which two values count as tied.
pub const TIE_TOL: f64 = 1e-9;

/// Runs `alg` with a fresh oracle counter and checks that the result is a tour.
/// `seed` drives the randomised algorithms (RT, GM3).
pub fn solve(alg: Algorithm, inst: &Instance, f: &Arc<dyn SetFunction>, seed: u64) -> Result<SolveReport> {
    let oracle = ValueOracle::from_arc(f.clone());
    let report = match alg {
        Algorithm::GT if inst.is_directed() => greedy_tour_directed(inst, &oracle, GreedyOptions::default())?,
        Algorithm::GT => greedy_tour(inst, &oracle, GreedyOptions::default())?,
        Algorithm::RT => random_tour(inst, &oracle, derive_seed(seed, 1))?,
        _ => {
            let cfg = alg.pipeline().expect("matching algorithm").with_seed(derive_seed(seed, 2));
            matching_pipeline(inst, &oracle, &cfg)?
        }
    };
    if !is_tour(inst, &report.solution) {
        return Err(Error::Contract(format!("{alg} returned a set that is not a Hamiltonian tour")));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub n: usize,
    pub instance: usize,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub value: f64,
    pub oracle_calls: u64,
    /// Seconds; informational only.
    pub wall_time: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: usize,
    pub algorithm: Algorithm,
    pub count: usize,
    pub mean: f64,
    /// Sample standard deviation (zero for a single instance).
    pub std: f64,
    pub min: f64,
    pub max: f64,
    /// Instances where the algorithm reached the best value, ties included.
    pub wins: usize,
    /// Instances where no other algorithm tied.
    pub unique_wins: usize,
    pub mean_calls: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonResults {
    pub config: ExperimentConfig,
    /// Sorted by size, instance, then the configured algorithm order.
    pub runs: Vec<RunRecord>,
    pub summary: Vec<SummaryRow>,
}

impl ComparisonResults {
    pub fn row(&self, n: usize, alg: Algorithm) -> Option<&SummaryRow> {
        self.summary.iter().find(|r| r.n == n && r.algorithm == alg)
    }
}

fn run_instance(cfg: &ExperimentConfig, n: usize, i: usize) -> Result<Vec<RunRecord>> {
    let spec = cfg.generator(n, i);
    let (inst, f) = generate_instance(&spec)?.build()?;
    cfg.algorithms
        .iter()
        .map(|&alg| {
            let r = solve(alg, &inst, &f, spec.seed)?;
            Ok(RunRecord {
                n,
                instance: i,
                seed: spec.seed,
                algorithm: alg,
                value: r.value,
                oracle_calls: r.oracle_calls,
                wall_time: r.wall_time,
            })
        })
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Instance { seed: spec.seed, source: Box::new(e) })
}

pub fn run_comparison(cfg: &ExperimentConfig) -> Result<ComparisonResults> {
    cfg.validate()?;
    let jobs: Vec<(usize, usize)> =
        cfg.sizes.iter().flat_map(|&n| (0..cfg.instances).map(move |i| (n, i))).collect();
    let mut batches: Vec<Vec<RunRecord>> =
        jobs.par_iter().map(|&(n, i)| run_instance(cfg, n, i)).collect::<Result<_>>()?;
    batches.sort_by_key(|b| (b[0].n, b[0].instance));
    let runs: Vec<RunRecord> = batches.into_iter().flatten().collect();
    let summary = summarize(cfg, &runs);
    Ok(ComparisonResults { config: cfg.clone(), runs, summary })
}

fn tied(a: f64, best: f64) -> bool {
    a >= best - TIE_TOL * best.abs().max(1.0)
}

pub(crate) fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn summarize(cfg: &ExperimentConfig, runs: &[RunRecord]) -> Vec<SummaryRow> {
    let k = cfg.algorithms.len();
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        let group: Vec<&[RunRecord]> = runs.chunks(k).filter(|c| c[0].n == n).collect();
        for (j, &alg) in cfg.algorithms.iter().enumerate() {
            let values: Vec<f64> = group.iter().map(|c| c[j].value).collect();
            let (mean, std) = mean_std(&values);
            let (mut wins, mut unique_wins) = (0, 0);
            for c in &group {
                let best = c.iter().map(|r| r.value).fold(f64::NEG_INFINITY, f64::max);
                if tied(c[j].value, best) {
                    wins += 1;
                    if c.iter().filter(|r| tied(r.value, best)).count() == 1 {
                        unique_wins += 1;
                    }
                }
            }
            rows.push(SummaryRow {
                n,
                algorithm: alg,
                count: values.len(),
                mean,
                std,
                min: values.iter().copied().fold(f64::INFINITY, f64::min),
                max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                wins,
                unique_wins,
                mean_calls: group.iter().map(|c| c[j].oracle_calls as f64).sum::<f64>() / group.len() as f64,
            });
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(algorithms: Vec<Algorithm>, sizes: Vec<usize>, instances: usize) -> ExperimentConfig {
        ExperimentConfig { algorithms, sizes, instances, seed: 3, ..Default::default() }
    }

    #[test]
    fn single_gt_single_instance_gives_one_row() {
        let res = run_comparison(&small(vec![Algorithm::GT], vec![8], 1)).unwrap();
        assert_eq!(res.runs.len(), 1);
        assert_eq!(res.summary.len(), 1);
        let row = &res.summary[0];
        assert_eq!((row.wins, row.unique_wins, row.std), (1, 1, 0.0));
    }

    #[test]
    fn runs_are_sorted_and_complete() {
        let cfg = small(Algorithm::ALL.to_vec(), vec![6, 5], 3);
        let res = run_comparison(&cfg).unwrap();
        assert_eq!(res.runs.len(), 2 * 3 * 7);
        let keys: Vec<_> = res.runs.iter().map(|r| (r.n, r.instance)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        for row in &res.summary {
            assert!(row.min <= row.mean && row.mean <= row.max);
            assert!(row.unique_wins <= row.wins && row.wins <= row.count);
        }
        // every instance has at least one winner
        for n in [5, 6] {
            let total: usize = res.summary.iter().filter(|r| r.n == n).map(|r| r.wins).sum();
            assert!(total >= 3);
        }
    }

    #[test]
    fn gm_spends_more_calls_than_gt() {
        let res = run_comparison(&small(vec![Algorithm::GT, Algorithm::GM], vec![12], 4)).unwrap();
        for c in res.runs.chunks(2) {
            assert!(c[1].oracle_calls > c[0].oracle_calls, "{c:?}");
        }
    }

    #[test]
    fn directed_batches_run() {
        let cfg = ExperimentConfig { directed: true, ..small(Algorithm::ALL.to_vec(), vec![6], 2) };
        let res = run_comparison(&cfg).unwrap();
        assert_eq!(res.runs.len(), 14);
    }

    #[test]
    fn cost_objective_batches_run() {
        use crate::bench::CostConfig;
        use crate::objectives::CostMode;
        let cfg = ExperimentConfig {
            cost: Some(CostConfig { beta: 0.5, mode: CostMode::Shifted, top_cost_offset: false }),
            ..small(vec![Algorithm::GT, Algorithm::GM], vec![7], 2)
        };
        run_comparison(&cfg).unwrap();
    }

    #[test]
    fn ties_count_for_everyone() {
        let cfg = small(vec![Algorithm::GT, Algorithm::GM], vec![3], 2);
        let res = run_comparison(&cfg).unwrap();
        // a triangle has a single tour
        for row in &res.summary {
            assert_eq!((row.wins, row.unique_wins), (2, 0));
        }
    }

    #[test]
    fn mean_std_matches_hand_computation() {
        let (m, s) = mean_std(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }
}
