use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use rsbf::search::{EncodingKind, Engine, RunConfig, RunResult, SCHEMA_VERSION};
use rsbf::stats::FiveNumber;
use rsbf::Objective;

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    /// Best nonlinearity per run.
    Nl,
    /// Best fitness value per run.
    Fitness,
}

impl Metric {
    fn of(self, r: &RunResult) -> f64 {
        match self {
            Metric::Nl => r.nl as f64,
            Metric::Fitness => r.best_fitness,
        }
    }
}

/// One summary line: a group key and the five-number summary of one metric.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub n: usize,
    pub encoding: EncodingKind,
    pub engine: Engine,
    pub objective: Objective,
    pub stats: FiveNumber,
}

impl SummaryRow {
    pub(crate) fn from_config(cfg: &RunConfig, results: &[RunResult], metric: Metric) -> Self {
        let values: Vec<f64> = results.iter().map(|r| metric.of(r)).collect();
        Self {
            n: cfg.n,
            encoding: cfg.encoding,
            engine: cfg.engine,
            objective: cfg.objective,
            stats: FiveNumber::of(&values).expect("non-empty results"),
        }
    }
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut s = String::from("n,encoding,engine,objective,min,q1,median,q3,max\n");
    for r in rows {
        let q = &r.stats;
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.n, r.encoding, r.engine, r.objective, q.min, q.q1, q.median, q.q3, q.max
        ));
    }
    s
}

/// Groups results by `(n, encoding, engine, objective)`; rows come out
/// sorted by that key regardless of input order.
pub fn group_rows(results: &[RunResult], metric: Metric) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(usize, EncodingKind, Engine, Objective), Vec<f64>> = BTreeMap::new();
    for r in results {
        let c = &r.config;
        groups
            .entry((c.n, c.encoding, c.engine, c.objective))
            .or_default()
            .push(metric.of(r));
    }
    groups
        .into_iter()
        .map(|((n, encoding, engine, objective), values)| SummaryRow {
            n,
            encoding,
            engine,
            objective,
            stats: FiveNumber::of(&values).expect("non-empty group"),
        })
        .collect()
}

fn collect_files(path: &Path, files: &mut Vec<PathBuf>) -> std::io::Result<()> {
    if path.is_dir() {
        let mut entries: Vec<PathBuf> = fs::read_dir(path)?
            .map(|e| e.map(|e| e.path()))
            .collect::<std::io::Result<_>>()?;
        entries.sort();
        for p in entries {
            if p.is_dir() || p.extension().is_some_and(|e| e == "json") {
                collect_files(&p, files)?;
            }
        }
    } else {
        files.push(path.to_path_buf());
    }
    Ok(())
}

pub(crate) fn load_result(path: &Path) -> Result<RunResult, String> {
    let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    match value.get("schema_version").and_then(|v| v.as_u64()) {
        Some(v) if v >= 1 && v <= SCHEMA_VERSION as u64 => {}
        Some(v) => return Err(format!("unsupported schema_version {v}")),
        None => return Err("missing schema_version".into()),
    }
    serde_json::from_value(value).map_err(|e| e.to_string())
}

pub(crate) fn cmd_stats(
    paths: &[PathBuf],
    metric: Metric,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<()> {
    let mut files = Vec::new();
    for p in paths {
        collect_files(p, &mut files).map_err(|e| CliError::io(p, e))?;
    }
    let mut results = Vec::new();
    let mut failures = 0;
    for f in &files {
        match load_result(f) {
            Ok(r) => results.push(r),
            Err(e) => {
                failures += 1;
                let _ = writeln!(err, "{}: {e}", f.display());
            }
        }
    }
    if !results.is_empty() {
        let csv = summary_csv(&group_rows(&results, metric));
        out.write_all(csv.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e))?;
    }
    if failures > 0 {
        return Err(CliError::Failed(format!(
            "{failures} of {} input files rejected",
            files.len()
        )));
    }
    if results.is_empty() {
        return Err(CliError::Failed("no result files found".into()));
    }
    Ok(())
}
