//! Direct encoding: the RS genotype itself is the search genotype.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::rotsym::RsGenotype;

pub type BitstringGenotype = RsGenotype;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitMutation {
    /// Invert one uniformly chosen bit.
    Simple,
    /// Permute the bits of a uniformly chosen substring.
    Shuffle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitCrossover {
    OnePoint,
    Uniform,
}

pub const MUTATIONS: [BitMutation; 2] = [BitMutation::Simple, BitMutation::Shuffle];
pub const CROSSOVERS: [BitCrossover; 2] = [BitCrossover::OnePoint, BitCrossover::Uniform];

pub fn flip_at(g: &BitstringGenotype, index: usize) -> BitstringGenotype {
    let mut child = g.clone();
    child.bits_mut()[index] ^= true;
    child
}

/// Shuffles positions `start..=end`.
pub fn shuffle_range<R: Rng + ?Sized>(
    g: &BitstringGenotype,
    start: usize,
    end: usize,
    rng: &mut R,
) -> BitstringGenotype {
    let mut child = g.clone();
    child.bits_mut()[start..=end].shuffle(rng);
    child
}

pub fn mutate<R: Rng + ?Sized>(
    g: &BitstringGenotype,
    op: BitMutation,
    rng: &mut R,
) -> BitstringGenotype {
    let len = g.len();
    match op {
        BitMutation::Simple => flip_at(g, rng.random_range(0..len)),
        BitMutation::Shuffle => {
            let a = rng.random_range(0..len);
            let b = rng.random_range(0..len);
            shuffle_range(g, a.min(b), a.max(b), rng)
        }
    }
}

fn check_lengths(p1: &BitstringGenotype, p2: &BitstringGenotype) -> Result<()> {
    if p1.len() != p2.len() || p1.variables() != p2.variables() {
        return Err(Error::LengthMismatch {
            expected: p1.len(),
            actual: p2.len(),
        });
    }
    Ok(())
}

/// `p1[..point] ++ p2[point..]`.
pub fn one_point_at(
    p1: &BitstringGenotype,
    p2: &BitstringGenotype,
    point: usize,
) -> Result<BitstringGenotype> {
    check_lengths(p1, p2)?;
    let mut child = p1.clone();
    child.bits_mut()[point..].copy_from_slice(&p2.bits()[point..]);
    Ok(child)
}

pub fn crossover<R: Rng + ?Sized>(
    p1: &BitstringGenotype,
    p2: &BitstringGenotype,
    op: BitCrossover,
    rng: &mut R,
) -> Result<BitstringGenotype> {
    check_lengths(p1, p2)?;
    match op {
        BitCrossover::OnePoint => {
            let point = rng.random_range(0..=p1.len());
            one_point_at(p1, p2, point)
        }
        BitCrossover::Uniform => {
            let mut child = p1.clone();
            for (c, &b) in child.bits_mut().iter_mut().zip(p2.bits()) {
                if rng.random::<bool>() {
                    *c = b;
                }
            }
            Ok(child)
        }
    }
}
