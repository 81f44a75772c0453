//! Floating-point encoding: a vector in `[0,1]^dimension` where each value
//! stands for `decode` consecutive genotype bits.
//!
//! Value `d` maps to the integer `floor(d / 2^-decode)`, clamped to
//! `2^decode - 1`, written most significant bit first.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::rotsym::RsGenotype;

/// Upper limit on bits per value, well inside `f64` precision.
pub const MAX_DECODE: usize = 32;

/// Standard deviation of the Gaussian perturbation mutation.
pub const GAUSSIAN_SIGMA: f64 = 0.1;

/// How a real vector maps onto an RS genotype of `genotype_len` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpLayout {
    n: usize,
    genotype_len: usize,
    decode: usize,
}

impl FpLayout {
    pub fn new(n: usize, genotype_len: usize, decode: usize) -> Result<Self> {
        if decode == 0 || decode > MAX_DECODE {
            return Err(Error::Config(format!(
                "decode must be in 1..={MAX_DECODE}, got {decode}"
            )));
        }
        if !genotype_len.is_multiple_of(decode) {
            return Err(Error::Config(format!(
                "decode {decode} does not divide the genotype size {genotype_len}"
            )));
        }
        Ok(Self {
            n,
            genotype_len,
            decode,
        })
    }

    pub fn decode_bits(&self) -> usize {
        self.decode
    }

    pub fn dimension(&self) -> usize {
        self.genotype_len / self.decode
    }

    pub fn genotype_len(&self) -> usize {
        self.genotype_len
    }

    pub fn variables(&self) -> usize {
        self.n
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FpGenotype {
    values: Vec<f64>,
}

impl FpGenotype {
    /// Values outside `[0,1]` are clamped.
    pub fn new(values: Vec<f64>) -> Self {
        Self {
            values: values.into_iter().map(clamp_unit).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(dimension: usize, rng: &mut R) -> Self {
        Self {
            values: (0..dimension).map(|_| rng.random::<f64>()).collect(),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dimension(&self) -> usize {
        self.values.len()
    }

    /// Comma separated values using the shortest round-tripping form.
    pub fn to_csv(&self) -> String {
        self.values
            .iter()
            .map(|v| format!("{v:?}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let values = text
            .trim()
            .split(',')
            .enumerate()
            .map(|(i, s)| {
                s.trim().parse::<f64>().map_err(|_| Error::Parse {
                    line: 1,
                    column: i + 1,
                    message: format!("invalid real {s:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(values))
    }
}

fn clamp_unit(v: f64) -> f64 {
    if v.is_nan() {
        0.0
    } else {
        v.clamp(0.0, 1.0)
    }
}

/// Integer bucket of a single value: `floor(d / 2^-decode)` clamped to the
/// top bucket.
pub fn int_value(d: f64, decode: usize) -> u64 {
    let buckets = 1u64 << decode;
    let raw = (clamp_unit(d) * buckets as f64).floor() as u64;
    raw.min(buckets - 1)
}

/// Decodes a real vector into the RS genotype bits it represents.
pub fn fp_decode_bits(g: &FpGenotype, layout: &FpLayout) -> Result<Vec<bool>> {
    if g.dimension() != layout.dimension() {
        return Err(Error::LengthMismatch {
            expected: layout.dimension(),
            actual: g.dimension(),
        });
    }
    let decode = layout.decode;
    let mut bits = Vec::with_capacity(layout.genotype_len);
    for &d in &g.values {
        let v = int_value(d, decode);
        bits.extend((0..decode).rev().map(|k| (v >> k) & 1 == 1));
    }
    Ok(bits)
}

pub fn fp_decode(g: &FpGenotype, layout: &FpLayout) -> Result<RsGenotype> {
    let bits = fp_decode_bits(g, layout)?;
    RsGenotype::new(layout.n, bits)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FpMutation {
    /// Resample one coordinate uniformly in `[0,1]`.
    Uniform,
    /// Add `N(0, sigma^2)` noise to one coordinate, then clamp.
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FpCrossover {
    /// `alpha p1 + (1 - alpha) p2` with one `alpha ~ U[0,1]`.
    Blend,
    /// Each coordinate copied from a uniformly chosen parent.
    Discrete,
}

pub const MUTATIONS: [FpMutation; 2] = [FpMutation::Uniform, FpMutation::Gaussian];
pub const CROSSOVERS: [FpCrossover; 2] = [FpCrossover::Blend, FpCrossover::Discrete];

pub fn fp_mutate<R: Rng + ?Sized>(g: &FpGenotype, op: FpMutation, rng: &mut R) -> FpGenotype {
    let mut child = g.clone();
    if child.values.is_empty() {
        return child;
    }
    let i = rng.random_range(0..child.values.len());
    child.values[i] = match op {
        FpMutation::Uniform => rng.random::<f64>(),
        FpMutation::Gaussian => {
            let noise = Normal::new(0.0, GAUSSIAN_SIGMA).expect("valid sigma");
            clamp_unit(child.values[i] + noise.sample(rng))
        }
    };
    child
}

/// Arithmetic blend with a fixed weight.
pub fn blend_with(p1: &FpGenotype, p2: &FpGenotype, alpha: f64) -> Result<FpGenotype> {
    check_dims(p1, p2)?;
    Ok(FpGenotype {
        values: p1
            .values
            .iter()
            .zip(&p2.values)
            .map(|(&a, &b)| clamp_unit(b + alpha * (a - b)))
            .collect(),
    })
}

fn check_dims(p1: &FpGenotype, p2: &FpGenotype) -> Result<()> {
    if p1.dimension() != p2.dimension() {
        return Err(Error::LengthMismatch {
            expected: p1.dimension(),
            actual: p2.dimension(),
        });
    }
    Ok(())
}

pub fn fp_crossover<R: Rng + ?Sized>(
    p1: &FpGenotype,
    p2: &FpGenotype,
    op: FpCrossover,
    rng: &mut R,
) -> Result<FpGenotype> {
    check_dims(p1, p2)?;
    match op {
        FpCrossover::Blend => blend_with(p1, p2, rng.random::<f64>()),
        FpCrossover::Discrete => Ok(FpGenotype {
            values: p1
                .values
                .iter()
                .zip(&p2.values)
                .map(|(&a, &b)| if rng.random::<bool>() { a } else { b })
                .collect(),
        }),
    }
}
