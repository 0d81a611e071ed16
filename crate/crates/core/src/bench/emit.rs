//! CSV and plain-text renderings of experiment results.
//!
//! Value tables contain only seed-determined columns, so reruns are
//! byte-identical; wall times go to a separate timings table.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::compare::ComparisonResults;
use super::sweep::SweepResults;
use crate::error::{Error, Result};

fn csv_string(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn runs_csv(res: &ComparisonResults) -> Result<String> {
    csv_string(
        &["n", "instance", "seed", "algorithm", "value", "oracle_calls"],
        res.runs.iter().map(|r| {
            vec![
                r.n.to_string(),
                r.instance.to_string(),
                r.seed.to_string(),
                r.algorithm.to_string(),
                r.value.to_string(),
                r.oracle_calls.to_string(),
            ]
        }),
    )
}

pub fn timings_csv(res: &ComparisonResults) -> Result<String> {
    csv_string(
        &["n", "instance", "seed", "algorithm", "wall_time_s"],
        res.runs.iter().map(|r| {
            vec![r.n.to_string(), r.instance.to_string(), r.seed.to_string(), r.algorithm.to_string(), r.wall_time.to_string()]
        }),
    )
}

pub fn summary_csv(res: &ComparisonResults) -> Result<String> {
    csv_string(
        &["n", "algorithm", "count", "mean", "std", "min", "max", "wins", "unique_wins", "mean_calls"],
        res.summary.iter().map(|r| {
            vec![
                r.n.to_string(),
                r.algorithm.to_string(),
                r.count.to_string(),
                r.mean.to_string(),
                r.std.to_string(),
                r.min.to_string(),
                r.max.to_string(),
                r.wins.to_string(),
                r.unique_wins.to_string(),
                r.mean_calls.to_string(),
            ]
        }),
    )
}

/// Win-count table per size, ties included in `wins` and unique wins in
/// parentheses.
pub fn summary_text(res: &ComparisonResults) -> String {
    let mut out = String::new();
    for &n in &res.config.sizes {
        let rows: Vec<_> = res.summary.iter().filter(|r| r.n == n).collect();
        let count = rows.first().map_or(0, |r| r.count);
        writeln!(out, "n = {n} ({count} instances)").unwrap();
        writeln!(
            out,
            "  {:<12} {:>14} {:>12} {:>14} {:>14} {:>12} {:>12}",
            "algorithm", "mean", "std", "min", "max", "wins", "mean calls"
        )
        .unwrap();
        for r in rows {
            writeln!(
                out,
                "  {:<12} {:>14.3} {:>12.3} {:>14.3} {:>14.3} {:>12} {:>12.1}",
                r.algorithm.name(),
                r.mean,
                r.std,
                r.min,
                r.max,
                format!("{} ({})", r.wins, r.unique_wins),
                r.mean_calls
            )
            .unwrap();
        }
        out.push('\n');
    }
    out
}

const SWEEP_COLUMNS: [&str; 6] = ["kappa", "greedy_matching", "linear_matching", "GT", "LGmatching", "Lmatching"];

pub fn sweep_records_csv(res: &SweepResults) -> Result<String> {
    let header: Vec<&str> = ["thickness", "instance", "seed"].into_iter().chain(SWEEP_COLUMNS).collect();
    csv_string(
        &header,
        res.records.iter().map(|r| {
            [r.thickness.to_string(), r.instance.to_string(), r.seed.to_string()]
                .into_iter()
                .chain([r.kappa, r.greedy_matching, r.linear_matching, r.gt, r.lg_matching, r.l_matching].map(|x| x.to_string()))
                .collect()
        }),
    )
}

pub fn sweep_summary_csv(res: &SweepResults) -> Result<String> {
    let header: Vec<&str> =
        ["thickness", "instances"].into_iter().chain(SWEEP_COLUMNS).chain(["kappa_std"]).collect();
    csv_string(
        &header,
        res.summary.iter().map(|r| {
            [r.thickness.to_string(), r.instances.to_string()]
                .into_iter()
                .chain(
                    [r.kappa, r.greedy_matching, r.linear_matching, r.gt, r.lg_matching, r.l_matching, r.kappa_std]
                        .map(|x| x.to_string()),
                )
                .collect()
        }),
    )
}

pub fn sweep_text(res: &SweepResults) -> String {
    let mut out = String::new();
    let s = &res.config.sweep;
    writeln!(out, "curvature sweep: n = {}, {} instances per thickness", s.n, s.instances).unwrap();
    writeln!(
        out,
        "  {:>9} {:>8} {:>16} {:>16} {:>12} {:>12} {:>12}",
        "thickness", "kappa", "greedy 2-match", "linear 2-match", "GT", "LGmatching", "Lmatching"
    )
    .unwrap();
    for r in &res.summary {
        writeln!(
            out,
            "  {:>9} {:>8.4} {:>16.3} {:>16.3} {:>12.3} {:>12.3} {:>12.3}",
            r.thickness, r.kappa, r.greedy_matching, r.linear_matching, r.gt, r.lg_matching, r.l_matching
        )
        .unwrap();
    }
    match res.crossover() {
        Some((t, k)) => writeln!(out, "greedy 2-matching first ahead at thickness {t} (kappa {k:.4})").unwrap(),
        None => writeln!(out, "greedy 2-matching never ahead on this grid").unwrap(),
    }
    out
}

fn write_all(dir: &Path, files: Vec<(&str, String)>) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    files
        .into_iter()
        .map(|(name, body)| {
            let path = dir.join(name);
            std::fs::write(&path, body)?;
            Ok(path)
        })
        .collect()
}

/// Writes `comparison_runs.csv`, `comparison_timings.csv`,
/// `comparison_summary.csv` and `comparison_summary.txt` into `dir`.
pub fn emit_comparison(res: &ComparisonResults, dir: &Path) -> Result<Vec<PathBuf>> {
    res.config.validate()?;
    if res.runs.is_empty() {
        return Err(Error::Config("no results to emit".into()));
    }
    write_all(
        dir,
        vec![
            ("comparison_runs.csv", runs_csv(res)?),
            ("comparison_timings.csv", timings_csv(res)?),
            ("comparison_summary.csv", summary_csv(res)?),
            ("comparison_summary.txt", summary_text(res)),
        ],
    )
}

/// Writes `sweep_records.csv`, `sweep_summary.csv` and `sweep_summary.txt`.
pub fn emit_sweep(res: &SweepResults, dir: &Path) -> Result<Vec<PathBuf>> {
    if res.records.is_empty() {
        return Err(Error::Config("no results to emit".into()));
    }
    write_all(
        dir,
        vec![
            ("sweep_records.csv", sweep_records_csv(res)?),
            ("sweep_summary.csv", sweep_summary_csv(res)?),
            ("sweep_summary.txt", sweep_text(res)),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{run_comparison, Algorithm, ExperimentConfig};

    fn results() -> ComparisonResults {
        let cfg = ExperimentConfig {
            algorithms: vec![Algorithm::GT, Algorithm::RT, Algorithm::GM],
            sizes: vec![6],
            instances: 3,
            ..Default::default()
        };
        run_comparison(&cfg).unwrap()
    }

    #[test]
    fn csv_round_trips_through_a_parser() {
        let res = results();
        let text = runs_csv(&res).unwrap();
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        assert_eq!(rdr.headers().unwrap(), vec!["n", "instance", "seed", "algorithm", "value", "oracle_calls"]);
        let rows: Vec<csv::StringRecord> = rdr.records().collect::<std::result::Result<_, _>>().unwrap();
        assert_eq!(rows.len(), res.runs.len());
        for (row, run) in rows.iter().zip(&res.runs) {
            assert_eq!(row[3].parse::<Algorithm>().unwrap(), run.algorithm);
            assert_eq!(row[4].parse::<f64>().unwrap(), run.value);
            assert_eq!(row[5].parse::<u64>().unwrap(), run.oracle_calls);
        }
    }

    #[test]
    fn re_emitting_gives_identical_files() {
        let res = results();
        let dir = tempfile::tempdir().unwrap();
        let a: Vec<Vec<u8>> =
            emit_comparison(&res, dir.path()).unwrap().iter().map(|p| std::fs::read(p).unwrap()).collect();
        let b: Vec<Vec<u8>> =
            emit_comparison(&res, dir.path()).unwrap().iter().map(|p| std::fs::read(p).unwrap()).collect();
        assert_eq!(a, b);
        assert!(summary_text(&res).contains("GM "));
    }

    #[test]
    fn empty_algorithm_list_fails_before_writing() {
        let mut res = results();
        res.config.algorithms.clear();
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("never");
        assert!(matches!(emit_comparison(&res, &out), Err(Error::Config(_))));
        assert!(!out.exists());
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let res = results();
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("plain");
        std::fs::write(&file, "x").unwrap();
        assert!(matches!(emit_comparison(&res, &file.join("sub")), Err(Error::Io(_))));
    }
}
