//! Seeded instance generation, batch experiments and result files.

mod compare;
mod config;
mod emit;
mod generate;
mod sweep;

pub use compare::{run_comparison, solve, ComparisonResults, RunRecord, SummaryRow, TIE_TOL};
pub use config::{Algorithm, ExperimentConfig, SweepConfig};
pub use emit::{
    emit_comparison, emit_sweep, runs_csv, summary_csv, summary_text, sweep_records_csv, sweep_summary_csv,
    sweep_text, timings_csv,
};
pub use generate::{generate_instance, CostConfig, GeneratorSpec, InstanceFile, ThicknessModel};
pub use sweep::{run_curvature_sweep, SweepRecord, SweepResults, SweepRow};
