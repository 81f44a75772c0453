use rand::seq::IndexedRandom;
use rand::Rng;

use crate::error::Result;
use crate::genotypes::bitstring::{self, BitstringGenotype};
use crate::genotypes::fp::{self, FpGenotype, FpLayout};
use crate::genotypes::gp::{self, GpParams, GpTree};
use crate::rotsym::{burnside_exponent, RsGenotype};

/// An encoding as seen by the engines: random initialisation, variation
/// operators (each call picks uniformly among the registered operators) and
/// the decoding to RS genotype bits.
pub trait Representation {
    type Genotype: Clone;

    fn initial_population<R: Rng>(&self, count: usize, rng: &mut R) -> Vec<Self::Genotype>;

    fn crossover<R: Rng>(
        &self,
        a: &Self::Genotype,
        b: &Self::Genotype,
        rng: &mut R,
    ) -> Self::Genotype;

    fn mutate<R: Rng>(&self, g: &Self::Genotype, rng: &mut R) -> Self::Genotype;

    fn rs_bits(&self, g: &Self::Genotype) -> Vec<bool>;

    /// Native text form of a genotype.
    fn describe(&self, g: &Self::Genotype) -> String;
}

#[derive(Debug, Clone)]
pub struct BitstringRep {
    n: usize,
}

impl BitstringRep {
    pub fn new(n: usize) -> Result<Self> {
        burnside_exponent(n)?;
        Ok(Self { n })
    }
}

impl Representation for BitstringRep {
    type Genotype = BitstringGenotype;

    fn initial_population<R: Rng>(&self, count: usize, rng: &mut R) -> Vec<BitstringGenotype> {
        (0..count)
            .map(|_| RsGenotype::random(self.n, rng).expect("validated n"))
            .collect()
    }

    fn crossover<R: Rng>(
        &self,
        a: &BitstringGenotype,
        b: &BitstringGenotype,
        rng: &mut R,
    ) -> BitstringGenotype {
        let op = *bitstring::CROSSOVERS.choose(rng).expect("non-empty");
        bitstring::crossover(a, b, op, rng).expect("equal lengths")
    }

    fn mutate<R: Rng>(&self, g: &BitstringGenotype, rng: &mut R) -> BitstringGenotype {
        let op = *bitstring::MUTATIONS.choose(rng).expect("non-empty");
        bitstring::mutate(g, op, rng)
    }

    fn rs_bits(&self, g: &BitstringGenotype) -> Vec<bool> {
        g.bits().to_vec()
    }

    fn describe(&self, g: &BitstringGenotype) -> String {
        g.bit_string()
    }
}

#[derive(Debug, Clone)]
pub struct FpRep {
    layout: FpLayout,
}

impl FpRep {
    pub fn new(n: usize, decode: usize) -> Result<Self> {
        Ok(Self {
            layout: FpLayout::new(n, burnside_exponent(n)?, decode)?,
        })
    }

    pub fn layout(&self) -> &FpLayout {
        &self.layout
    }
}

impl Representation for FpRep {
    type Genotype = FpGenotype;

    fn initial_population<R: Rng>(&self, count: usize, rng: &mut R) -> Vec<FpGenotype> {
        (0..count)
            .map(|_| FpGenotype::random(self.layout.dimension(), rng))
            .collect()
    }

    fn crossover<R: Rng>(&self, a: &FpGenotype, b: &FpGenotype, rng: &mut R) -> FpGenotype {
        let op = *fp::CROSSOVERS.choose(rng).expect("non-empty");
        fp::fp_crossover(a, b, op, rng).expect("equal dimensions")
    }

    fn mutate<R: Rng>(&self, g: &FpGenotype, rng: &mut R) -> FpGenotype {
        let op = *fp::MUTATIONS.choose(rng).expect("non-empty");
        fp::fp_mutate(g, op, rng)
    }

    fn rs_bits(&self, g: &FpGenotype) -> Vec<bool> {
        fp::fp_decode_bits(g, &self.layout).expect("dimension matches layout")
    }

    fn describe(&self, g: &FpGenotype) -> String {
        g.to_csv()
    }
}

#[derive(Debug, Clone)]
pub struct GpRep {
    genotype_len: usize,
    params: GpParams,
}

impl GpRep {
    pub fn new(n: usize, max_depth: usize) -> Result<Self> {
        let genotype_len = burnside_exponent(n)?;
        Ok(Self {
            genotype_len,
            params: GpParams::for_genotype(genotype_len, max_depth),
        })
    }

    pub fn params(&self) -> &GpParams {
        &self.params
    }
}

impl Representation for GpRep {
    type Genotype = GpTree;

    fn initial_population<R: Rng>(&self, count: usize, rng: &mut R) -> Vec<GpTree> {
        gp::ramped_half_and_half(&self.params, count, rng)
    }

    fn crossover<R: Rng>(&self, a: &GpTree, b: &GpTree, rng: &mut R) -> GpTree {
        gp::gp_crossover(a, b, &self.params, rng)
    }

    fn mutate<R: Rng>(&self, g: &GpTree, rng: &mut R) -> GpTree {
        gp::gp_mutate(g, &self.params, rng)
    }

    fn rs_bits(&self, g: &GpTree) -> Vec<bool> {
        g.output_prefix(self.genotype_len)
    }

    fn describe(&self, g: &GpTree) -> String {
        g.to_sexpr()
    }
}
