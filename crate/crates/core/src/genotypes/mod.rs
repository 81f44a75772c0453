//! Searchable representations and their variation operators. Each one
//! decodes to an [`RsGenotype`](crate::rotsym::RsGenotype).

pub mod bitstring;
pub mod fp;
pub mod gp;

pub use bitstring::{BitCrossover, BitMutation, BitstringGenotype};
pub use fp::{fp_crossover, fp_decode, fp_mutate, FpCrossover, FpGenotype, FpLayout, FpMutation};
pub use gp::{
    gp_crossover, gp_decode, gp_mutate, GpParams, GpTree, Node, Primitive, TreeCrossover,
};
