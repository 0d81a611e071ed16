//! Curvature sweep: the coverage-plus-length objective at a grid of fixed
//! thicknesses, on a batch of small instances.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::compare::{mean_std, solve};
use super::config::{Algorithm, ExperimentConfig};
use super::generate::generate_instance;
use crate::error::{Error, Result};
use crate::greedy::{greedy_matching, GreedyOptions};
use crate::matching::linear_relaxation_matching;
use crate::objectives::{curvature, ValueOracle};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub thickness: f64,
    pub instance: usize,
    pub seed: u64,
    pub kappa: f64,
    /// Value of the greedy 2-matching (before any tour repair).
    pub greedy_matching: f64,
    /// Value of the 2-matching maximising the sum of singleton values.
    pub linear_matching: f64,
    pub gt: f64,
    pub lg_matching: f64,
    pub l_matching: f64,
}

/// Batch averages at one thickness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub thickness: f64,
    pub instances: usize,
    pub kappa: f64,
    pub kappa_std: f64,
    pub greedy_matching: f64,
    pub linear_matching: f64,
    pub gt: f64,
    pub lg_matching: f64,
    pub l_matching: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResults {
    pub config: ExperimentConfig,
    /// Sorted by thickness index, then instance.
    pub records: Vec<SweepRecord>,
    /// One row per thickness, in grid order.
    pub summary: Vec<SweepRow>,
}

impl SweepResults {
    /// First thickness whose batch-average greedy 2-matching value exceeds the
    /// linear one, with the batch-average curvature there.
    pub fn crossover(&self) -> Option<(f64, f64)> {
        self.summary.iter().find(|r| r.greedy_matching > r.linear_matching).map(|r| (r.thickness, r.kappa))
    }
}

fn sweep_point(cfg: &ExperimentConfig, i: usize, t: f64) -> Result<SweepRecord> {
    let spec = cfg.sweep_generator(i, t);
    let run = || -> Result<SweepRecord> {
        let (inst, f) = generate_instance(&spec)?.build()?;
        let kappa = curvature(&ValueOracle::from_arc(f.clone()))?.kappa;
        let gm = greedy_matching(&inst, &ValueOracle::from_arc(f.clone()), GreedyOptions::default())?;
        let lin = linear_relaxation_matching(&inst, &ValueOracle::from_arc(f.clone()))?;
        let tour = |alg| solve(alg, &inst, &f, spec.seed).map(|r| r.value);
        Ok(SweepRecord {
            thickness: t,
            instance: i,
            seed: spec.seed,
            kappa,
            greedy_matching: gm.value,
            linear_matching: lin.value,
            gt: tour(Algorithm::GT)?,
            lg_matching: tour(Algorithm::LGmatching)?,
            l_matching: tour(Algorithm::Lmatching)?,
        })
    };
    run().map_err(|e| Error::Instance { seed: spec.seed, source: Box::new(e) })
}

pub fn run_curvature_sweep(cfg: &ExperimentConfig) -> Result<SweepResults> {
    cfg.validate_sweep()?;
    let s = &cfg.sweep;
    let jobs: Vec<(usize, usize)> =
        (0..s.thicknesses.len()).flat_map(|j| (0..s.instances).map(move |i| (j, i))).collect();
    let records: Vec<SweepRecord> =
        jobs.par_iter().map(|&(j, i)| sweep_point(cfg, i, s.thicknesses[j])).collect::<Result<_>>()?;
    let summary = records
        .chunks(s.instances)
        .map(|batch| {
            let avg = |g: fn(&SweepRecord) -> f64| batch.iter().map(g).sum::<f64>() / batch.len() as f64;
            let (kappa, kappa_std) = mean_std(&batch.iter().map(|r| r.kappa).collect::<Vec<_>>());
            SweepRow {
                thickness: batch[0].thickness,
                instances: batch.len(),
                kappa,
                kappa_std,
                greedy_matching: avg(|r| r.greedy_matching),
                linear_matching: avg(|r| r.linear_matching),
                gt: avg(|r| r.gt),
                lg_matching: avg(|r| r.lg_matching),
                l_matching: avg(|r| r.l_matching),
            }
        })
        .collect();
    Ok(SweepResults { config: cfg.clone(), records, summary })
}
