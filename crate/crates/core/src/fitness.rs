//! Objective functions computed from the Walsh spectrum.
//!
//! Both objectives reward nonlinearity and break ties between functions of
//! equal nonlinearity by how few spectrum positions attain the maximal
//! absolute value: `nl + (2^n - max_count) / 2^n`. The balanced objective
//! only pays that reward when the function is balanced and otherwise
//! returns the negated balance deficit.
//!
//! Values are kept as an exact integer numerator over `2^n` so comparisons
//! never depend on floating-point rounding.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::boolean::{fwht_in_place, TruthTable};
use crate::rotsym::OrbitTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// Maximal nonlinearity, no balance requirement.
    Bent,
    /// Balanced functions with high nonlinearity.
    Balanced,
}

impl Objective {
    pub fn as_str(self) -> &'static str {
        match self {
            Objective::Bent => "bent",
            Objective::Balanced => "balanced",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bent" => Ok(Objective::Bent),
            "balanced" => Ok(Objective::Balanced),
            _ => Err(format!("unknown objective {s:?}")),
        }
    }
}

/// A fitness value together with the quantities it was built from.
///
/// Equality and ordering look at the objective value only.
#[derive(Debug, Clone, Copy)]
pub struct FitnessValue {
    n: usize,
    numerator: i64,
    pub nl: u32,
    pub bal: u32,
    pub max_count: usize,
}

impl FitnessValue {
    fn new(objective: Objective, n: usize, nl: u32, bal: u32, max_count: usize) -> Self {
        let size = 1i64 << n;
        let reward = nl as i64 * size + (size - max_count as i64);
        let numerator = match objective {
            Objective::Bent => reward,
            Objective::Balanced if bal == 0 => reward,
            Objective::Balanced => -(bal as i64) * size,
        };
        Self {
            n,
            numerator,
            nl,
            bal,
            max_count,
        }
    }

    /// Builds a value from spectrum statistics.
    pub fn from_stats(
        objective: Objective,
        n: usize,
        weight: usize,
        max_abs: i32,
        max_count: usize,
    ) -> Self {
        let half = 1usize << (n - 1);
        let nl = half as u32 - (max_abs as u32) / 2;
        let bal = weight.abs_diff(half) as u32;
        Self::new(objective, n, nl, bal, max_count)
    }

    /// The objective value as a real number.
    pub fn scalar(&self) -> f64 {
        self.numerator as f64 / (1i64 << self.n) as f64
    }

    /// Numerator over the common denominator `2^n`.
    pub fn numerator(&self) -> i64 {
        self.numerator
    }

    pub fn variables(&self) -> usize {
        self.n
    }
}

impl PartialEq for FitnessValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for FitnessValue {}

impl PartialOrd for FitnessValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FitnessValue {
    fn cmp(&self, other: &Self) -> Ordering {
        // denominators are equal for values of the same n
        (self.numerator as i128 * (1i128 << other.n))
            .cmp(&(other.numerator as i128 * (1i128 << self.n)))
    }
}

impl fmt::Display for FitnessValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.4}", self.scalar())
    }
}

fn spectrum_stats(values: &[i32]) -> (i32, usize) {
    let mut max = 0;
    let mut count = 0;
    for v in values.iter().map(|v| v.abs()) {
        match v.cmp(&max) {
            Ordering::Greater => {
                max = v;
                count = 1;
            }
            Ordering::Equal => count += 1,
            Ordering::Less => {}
        }
    }
    (max, count)
}

fn evaluate_table(objective: Objective, tt: &TruthTable) -> FitnessValue {
    let mut s = tt.signal();
    fwht_in_place(&mut s);
    let (max_abs, max_count) = spectrum_stats(&s);
    FitnessValue::from_stats(objective, tt.variables(), tt.weight(), max_abs, max_count)
}

/// `nl + (2^n - max_count) / 2^n`.
pub fn fitness_bent(tt: &TruthTable) -> FitnessValue {
    evaluate_table(Objective::Bent, tt)
}

/// `-BAL + [BAL = 0] (nl + (2^n - max_count) / 2^n)`.
pub fn fitness_balanced(tt: &TruthTable) -> FitnessValue {
    evaluate_table(Objective::Balanced, tt)
}

pub fn fitness(objective: Objective, tt: &TruthTable) -> FitnessValue {
    evaluate_table(objective, tt)
}

/// Evaluates RS genotypes directly against a shared orbit table, reusing
/// one scratch buffer for the spectrum.
#[derive(Debug, Clone)]
pub struct Evaluator {
    orbits: Arc<OrbitTable>,
    objective: Objective,
    scratch: Vec<i32>,
}

impl Evaluator {
    pub fn new(orbits: Arc<OrbitTable>, objective: Objective) -> Self {
        let len = 1 << orbits.variables();
        Self {
            orbits,
            objective,
            scratch: vec![0; len],
        }
    }

    pub fn orbits(&self) -> &Arc<OrbitTable> {
        &self.orbits
    }

    pub fn objective(&self) -> Objective {
        self.objective
    }

    pub fn evaluate(&mut self, genotype: &[bool]) -> FitnessValue {
        let ot = &self.orbits;
        ot.fill_signal(genotype, &mut self.scratch);
        fwht_in_place(&mut self.scratch);
        let (max_abs, max_count) = spectrum_stats(&self.scratch);
        FitnessValue::from_stats(
            self.objective,
            ot.variables(),
            ot.weight(genotype),
            max_abs,
            max_count,
        )
    }
}
