use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{prepare, FpRep, Representation, RunConfig, RunResult, Tracker};
use crate::error::{Error, Result};
use crate::fitness::{Evaluator, FitnessValue};
use crate::genotypes::fp::FpGenotype;
use crate::rotsym::OrbitTable;

/// Differential evolution, rand/1/bin, on the floating-point encoding.
///
/// For every target a mutant `a + F (b - c)` is built from three other
/// distinct members and clamped to `[0,1]`; binomial crossover with rate
/// `CR` (one coordinate always from the mutant) gives the trial, which
/// replaces the target in the next generation when it is at least as fit.
pub fn run_de(cfg: &RunConfig) -> Result<RunResult> {
    run_de_with(cfg, Arc::new(OrbitTable::new(cfg.n)?))
}

pub(crate) fn run_de_with(cfg: &RunConfig, orbits: Arc<OrbitTable>) -> Result<RunResult> {
    if cfg.encoding != super::EncodingKind::Fp {
        return Err(Error::Config(format!(
            "differential evolution requires the fp encoding, got {}",
            cfg.encoding
        )));
    }
    let cfg = &RunConfig {
        engine: super::Engine::De,
        ..cfg.clone()
    };
    let (orbits, mut ev) = prepare(cfg, Some(orbits))?;
    let rep = FpRep::new(cfg.n, cfg.decode)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let population = rep.initial_population(cfg.population_size, &mut rng);
    Ok(evolve(&rep, &mut ev, cfg, population, &mut rng).finish(&rep, cfg, &orbits))
}

/// Three distinct indices, all different from `target`.
fn pick_three<R: Rng>(len: usize, target: usize, rng: &mut R) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    while k < 3 {
        let c = rng.random_range(0..len);
        if c != target && !out[..k].contains(&c) {
            out[k] = c;
            k += 1;
        }
    }
    out
}

pub(crate) fn trial_vector<R: Rng>(
    target: &FpGenotype,
    a: &FpGenotype,
    b: &FpGenotype,
    c: &FpGenotype,
    weight: f64,
    rate: f64,
    rng: &mut R,
) -> FpGenotype {
    let dim = target.dimension();
    let forced = rng.random_range(0..dim);
    let values = (0..dim)
        .map(|j| {
            if j == forced || rng.random_bool(rate) {
                a.values()[j] + weight * (b.values()[j] - c.values()[j])
            } else {
                target.values()[j]
            }
        })
        .collect();
    FpGenotype::new(values)
}

pub(crate) fn evolve<R: Rng>(
    rep: &FpRep,
    ev: &mut Evaluator,
    cfg: &RunConfig,
    mut population: Vec<FpGenotype>,
    rng: &mut R,
) -> Tracker<FpGenotype> {
    let mut tracker = Tracker::new();
    let mut fitness: Vec<FitnessValue> = population
        .iter()
        .map(|g| {
            let f = ev.evaluate(&rep.rs_bits(g));
            tracker.record(g, f);
            f
        })
        .collect();

    let size = population.len();
    while tracker.evaluations < cfg.budget {
        let mut next = population.clone();
        let mut next_fitness = fitness.clone();
        for i in 0..size {
            if tracker.evaluations >= cfg.budget {
                break;
            }
            let [a, b, c] = pick_three(size, i, rng);
            let trial = trial_vector(
                &population[i],
                &population[a],
                &population[b],
                &population[c],
                cfg.de_f,
                cfg.de_cr,
                rng,
            );
            let f = ev.evaluate(&rep.rs_bits(&trial));
            tracker.record(&trial, f);
            if f >= fitness[i] {
                next[i] = trial;
                next_fitness[i] = f;
            }
        }
        population = next;
        fitness = next_fitness;
    }
    tracker
}
