//! Evolutionary engines and the run protocol around them.
//!
//! Every engine counts fitness evaluations (initial population included)
//! against the configured budget and reports the best individual ever
//! evaluated, which may no longer be in the final population.

mod batch;
mod de;
mod representation;
mod sst;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::boolean::check_variables;
use crate::error::{Error, Result};
use crate::fitness::{Evaluator, FitnessValue, Objective};
use crate::genotypes::fp::FpLayout;
use crate::rotsym::{burnside_exponent, decode_rs, OrbitTable, RsGenotype};
use crate::TruthTable;

pub use batch::{run_batch, run_batch_with, Batch, BatchSummary};
pub use de::run_de;
pub use representation::{BitstringRep, FpRep, GpRep, Representation};
pub use sst::run_sst;

/// Version tag written into every serialized run record.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EncodingKind {
    /// Bitstring over the RS genotype.
    Tt,
    /// Real vector in `[0,1]^dimension`.
    Fp,
    /// Expression tree.
    Gp,
}

impl EncodingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EncodingKind::Tt => "tt",
            EncodingKind::Fp => "fp",
            EncodingKind::Gp => "gp",
        }
    }
}

impl fmt::Display for EncodingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EncodingKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "tt" | "bitstring" => Ok(EncodingKind::Tt),
            "fp" => Ok(EncodingKind::Fp),
            "gp" => Ok(EncodingKind::Gp),
            _ => Err(format!("unknown encoding {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Steady-state GA with 3-tournament elimination.
    Sst,
    /// Differential evolution, rand/1/bin.
    De,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Sst => "sst",
            Engine::De => "de",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "sst" => Ok(Engine::Sst),
            "de" => Ok(Engine::De),
            _ => Err(format!("unknown engine {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: usize,
    pub encoding: EncodingKind,
    pub engine: Engine,
    pub objective: Objective,
    pub population_size: usize,
    /// Total number of fitness evaluations.
    pub budget: u64,
    pub mutation_probability: f64,
    pub seed: u64,
    /// Genotype bits per real value (FP encoding).
    pub decode: usize,
    /// Depth limit for trees (GP encoding).
    pub max_depth: usize,
    /// DE differential weight.
    pub de_f: f64,
    /// DE crossover rate.
    pub de_cr: f64,
}

impl RunConfig {
    pub fn new(n: usize, encoding: EncodingKind, objective: Objective) -> Self {
        Self {
            n,
            encoding,
            engine: Engine::Sst,
            objective,
            population_size: 500,
            budget: 1_000_000,
            mutation_probability: 0.5,
            seed: 0,
            decode: 1,
            max_depth: 12,
            de_f: 0.5,
            de_cr: 0.9,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_population(mut self, population_size: usize) -> Self {
        self.population_size = population_size;
        self
    }

    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_variables(self.n)?;
        let bad = |msg: String| Err(Error::Config(msg));
        if self.population_size < 3 {
            return bad(format!(
                "population size must be at least 3, got {}",
                self.population_size
            ));
        }
        if self.budget < self.population_size as u64 {
            return bad(format!(
                "budget {} is smaller than the population size {}",
                self.budget, self.population_size
            ));
        }
        if !(0.0..=1.0).contains(&self.mutation_probability) {
            return bad(format!(
                "mutation probability {} not in [0,1]",
                self.mutation_probability
            ));
        }
        match self.encoding {
            EncodingKind::Fp => {
                FpLayout::new(self.n, burnside_exponent(self.n)?, self.decode)?;
            }
            EncodingKind::Gp if self.max_depth == 0 => {
                return bad("max depth must be at least 1".into());
            }
            _ => {}
        }
        if self.engine == Engine::De {
            if self.encoding != EncodingKind::Fp {
                return bad(format!(
                    "differential evolution requires the fp encoding, got {}",
                    self.encoding
                ));
            }
            if self.population_size < 4 {
                return bad("differential evolution needs a population of at least 4".into());
            }
            if !(self.de_f > 0.0 && self.de_f <= 2.0) {
                return bad(format!("DE weight {} not in (0,2]", self.de_f));
            }
            if !(0.0..=1.0).contains(&self.de_cr) {
                return bad(format!("DE crossover rate {} not in [0,1]", self.de_cr));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    /// 1-based index of the evaluation that produced the improvement.
    pub evaluation: u64,
    pub fitness: f64,
    pub nl: u32,
}

/// One finished run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub schema_version: u32,
    pub config: RunConfig,
    pub seed: u64,
    pub best_fitness: f64,
    pub nl: u32,
    pub bal: u32,
    pub max_count: usize,
    /// Best individual in its own encoding: bits, CSV reals or s-expression.
    pub genotype: String,
    pub rs_genotype: String,
    pub truth_table_hex: String,
    pub evaluations_used: u64,
    pub trajectory: Vec<TrajectoryPoint>,
}

impl RunResult {
    pub fn best_rs_genotype(&self) -> Result<RsGenotype> {
        RsGenotype::parse_text(&format!("n={}\n{}", self.config.n, self.rs_genotype))
    }

    pub fn best_truth_table(&self) -> Result<TruthTable> {
        TruthTable::from_hex(self.config.n, &self.truth_table_hex)
    }
}

/// Best-so-far bookkeeping shared by the engines.
pub(crate) struct Tracker<G> {
    pub evaluations: u64,
    pub best: Option<(G, FitnessValue)>,
    pub trajectory: Vec<TrajectoryPoint>,
}

impl<G: Clone> Tracker<G> {
    pub fn new() -> Self {
        Self {
            evaluations: 0,
            best: None,
            trajectory: Vec::new(),
        }
    }

    pub fn record(&mut self, g: &G, fit: FitnessValue) {
        self.evaluations += 1;
        if self.best.as_ref().is_none_or(|(_, b)| fit > *b) {
            self.best = Some((g.clone(), fit));
            self.trajectory.push(TrajectoryPoint {
                evaluation: self.evaluations,
                fitness: fit.scalar(),
                nl: fit.nl,
            });
        }
    }

    pub fn finish<E: Representation<Genotype = G>>(
        self,
        rep: &E,
        cfg: &RunConfig,
        orbits: &OrbitTable,
    ) -> RunResult {
        let (g, fit) = self.best.expect("at least one evaluation");
        let rs = RsGenotype::from_parts(cfg.n, rep.rs_bits(&g));
        let tt = decode_rs(&rs, orbits).expect("representation yields valid genotypes");
        RunResult {
            schema_version: SCHEMA_VERSION,
            config: cfg.clone(),
            seed: cfg.seed,
            best_fitness: fit.scalar(),
            nl: fit.nl,
            bal: fit.bal,
            max_count: fit.max_count,
            genotype: rep.describe(&g),
            rs_genotype: rs.bit_string(),
            truth_table_hex: tt.to_hex(),
            evaluations_used: self.evaluations,
            trajectory: self.trajectory,
        }
    }
}

/// Runs the configured engine once.
pub fn run(cfg: &RunConfig) -> Result<RunResult> {
    match cfg.engine {
        Engine::Sst => run_sst(cfg),
        Engine::De => run_de(cfg),
    }
}

/// Runs `cfg` against an orbit table built elsewhere (batches share one).
pub fn run_with(cfg: &RunConfig, orbits: Arc<OrbitTable>) -> Result<RunResult> {
    match cfg.engine {
        Engine::Sst => sst::run_sst_with(cfg, orbits),
        Engine::De => de::run_de_with(cfg, orbits),
    }
}

pub(crate) fn prepare(
    cfg: &RunConfig,
    orbits: Option<Arc<OrbitTable>>,
) -> Result<(Arc<OrbitTable>, Evaluator)> {
    cfg.validate()?;
    let orbits = match orbits {
        Some(ot) if ot.variables() == cfg.n => ot,
        _ => Arc::new(OrbitTable::new(cfg.n)?),
    };
    let ev = Evaluator::new(orbits.clone(), cfg.objective);
    Ok((orbits, ev))
}
