use std::sync::Arc;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    prepare, BitstringRep, EncodingKind, FpRep, GpRep, Representation, RunConfig, RunResult,
    Tracker,
};
use crate::error::Result;
use crate::fitness::{Evaluator, FitnessValue};
use crate::rotsym::OrbitTable;

/// Steady-state GA with 3-tournament elimination.
///
/// Each step samples three distinct individuals, removes the worst (ties
/// broken uniformly), crosses the other two, mutates the child with the
/// configured probability and puts it in the freed slot.
pub fn run_sst(cfg: &RunConfig) -> Result<RunResult> {
    run_sst_with(cfg, Arc::new(OrbitTable::new(cfg.n)?))
}

pub(crate) fn run_sst_with(cfg: &RunConfig, orbits: Arc<OrbitTable>) -> Result<RunResult> {
    let (orbits, mut ev) = prepare(cfg, Some(orbits))?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Ok(match cfg.encoding {
        EncodingKind::Tt => {
            let rep = BitstringRep::new(cfg.n)?;
            steady_state(&rep, &mut ev, cfg, &mut rng).finish(&rep, cfg, &orbits)
        }
        EncodingKind::Fp => {
            let rep = FpRep::new(cfg.n, cfg.decode)?;
            steady_state(&rep, &mut ev, cfg, &mut rng).finish(&rep, cfg, &orbits)
        }
        EncodingKind::Gp => {
            let rep = GpRep::new(cfg.n, cfg.max_depth)?;
            steady_state(&rep, &mut ev, cfg, &mut rng).finish(&rep, cfg, &orbits)
        }
    })
}

/// Index of the tournament member to eliminate.
pub(crate) fn worst_of<R: Rng>(
    members: [usize; 3],
    fitness: &[FitnessValue],
    rng: &mut R,
) -> usize {
    let worst = members
        .iter()
        .map(|&i| fitness[i])
        .min()
        .expect("three members");
    let tied: Vec<usize> = members
        .into_iter()
        .filter(|&i| fitness[i] == worst)
        .collect();
    tied[rng.random_range(0..tied.len())]
}

pub(crate) fn steady_state<E: Representation, R: Rng>(
    rep: &E,
    ev: &mut Evaluator,
    cfg: &RunConfig,
    rng: &mut R,
) -> Tracker<E::Genotype> {
    let mut tracker = Tracker::new();
    let mut population = rep.initial_population(cfg.population_size, rng);
    let mut fitness: Vec<FitnessValue> = population
        .iter()
        .map(|g| {
            let f = ev.evaluate(&rep.rs_bits(g));
            tracker.record(g, f);
            f
        })
        .collect();

    while tracker.evaluations < cfg.budget {
        let picked = index::sample(rng, population.len(), 3);
        let members = [picked.index(0), picked.index(1), picked.index(2)];
        let out = worst_of(members, &fitness, rng);
        let mut parents = members.into_iter().filter(|&i| i != out);
        let (a, b) = (parents.next().unwrap(), parents.next().unwrap());

        let mut child = rep.crossover(&population[a], &population[b], rng);
        if rng.random_bool(cfg.mutation_probability) {
            child = rep.mutate(&child, rng);
        }
        let f = ev.evaluate(&rep.rs_bits(&child));
        tracker.record(&child, f);
        population[out] = child;
        fitness[out] = f;
    }
    tracker
}
