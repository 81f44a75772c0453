use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{run_with, RunConfig, RunResult};
use crate::error::{Error, Result};
use crate::rotsym::OrbitTable;
use crate::stats::FiveNumber;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub runs: usize,
    pub fitness: FiveNumber,
    pub nl: FiveNumber,
}

impl BatchSummary {
    pub fn of(results: &[RunResult]) -> Option<Self> {
        let fit: Vec<f64> = results.iter().map(|r| r.best_fitness).collect();
        let nl: Vec<f64> = results.iter().map(|r| r.nl as f64).collect();
        Some(Self {
            runs: results.len(),
            fitness: FiveNumber::of(&fit)?,
            nl: FiveNumber::of(&nl)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Batch {
    /// Results in seed order.
    pub results: Vec<RunResult>,
    pub summary: BatchSummary,
}

/// Independent runs with seeds `cfg.seed, cfg.seed + 1, ...`, executed on the
/// current rayon pool.
pub fn run_batch(cfg: &RunConfig, runs: usize) -> Result<Batch> {
    run_batch_with(cfg, runs, |_| {})
}

/// Like [`run_batch`], calling `done` as each run finishes (in completion order).
pub fn run_batch_with(
    cfg: &RunConfig,
    runs: usize,
    done: impl Fn(&RunResult) + Sync,
) -> Result<Batch> {
    if runs == 0 {
        return Err(Error::Config("at least one run is required".into()));
    }
    cfg.validate()?;
    let orbits = Arc::new(OrbitTable::new(cfg.n)?);
    let results = (0..runs as u64)
        .into_par_iter()
        .map(|k| {
            let run_cfg = RunConfig {
                seed: cfg.seed.wrapping_add(k),
                ..cfg.clone()
            };
            let r = run_with(&run_cfg, orbits.clone())?;
            done(&r);
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = BatchSummary::of(&results).expect("non-empty batch");
    Ok(Batch { results, summary })
}
