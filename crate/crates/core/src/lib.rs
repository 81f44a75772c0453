//! Evolutionary construction of rotation symmetric Boolean functions.
//!
//! The crate is organised bottom-up:
//!
//! - [`boolean`]: truth tables, the Walsh-Hadamard transform and the
//!   properties derived from it (nonlinearity, balance, degree, bounds).
//! - [`rotsym`]: rotation orbits and the compact one-bit-per-orbit genotype.
//! - [`genotypes`]: bitstring, floating-point and tree encodings.
//! - [`fitness`]: the spectrum-aware objectives.
//! - [`search`]: steady-state tournament GA and differential evolution.
//! - [`oracle`]: exhaustive enumeration for small variable counts.

pub mod boolean;
pub mod error;
pub mod fitness;
pub mod genotypes;
pub mod oracle;
pub mod rotsym;
pub mod search;
pub mod stats;

pub use boolean::{
    algebraic_degree, balance_deficit, covering_bound, nonlinearity, walsh_transform,
    PropertyReport, TruthTable, WalshMode, WalshSpectrum,
};
pub use error::{Error, Result};
pub use fitness::{fitness_balanced, fitness_bent, Evaluator, FitnessValue, Objective};
pub use rotsym::{burnside_exponent, decode_rs, encode_rs, OrbitTable, RsGenotype};
