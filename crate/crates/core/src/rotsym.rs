//! Rotation orbits of the input space and the compact genotype of a rotation
//! symmetric function (one output bit per orbit).

use std::fmt;

use rand::Rng;

use crate::boolean::{check_variables, parse_binary_line, parse_header, TruthTable};
use crate::error::{parse_error, Error, Result};

fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Number of rotation orbits of `{0,1}^n`, `(1/n) sum_{t|n} phi(t) 2^(n/t)`.
pub fn burnside_exponent(n: usize) -> Result<usize> {
    check_variables(n)?;
    let n = n as u64;
    let total: u64 = (1..=n)
        .filter(|t| n.is_multiple_of(*t))
        .map(|t| euler_phi(t) << (n / t))
        .sum();
    debug_assert_eq!(total % n, 0);
    Ok((total / n) as usize)
}

/// Rotates an `n`-bit row index one step: `(x0, ..., x_{n-1}) -> (x_{n-1}, x0, ..., x_{n-2})`.
#[inline]
pub fn rotate(n: usize, row: usize) -> usize {
    (row >> 1) | ((row & 1) << (n - 1))
}

/// Partition of the `2^n` inputs into cyclic-shift orbits.
///
/// Orbits are numbered in ascending order of their representative, the
/// smallest row index among the rotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTable {
    n: usize,
    representatives: Vec<usize>,
    sizes: Vec<usize>,
    orbit_of: Vec<u32>,
}

impl OrbitTable {
    pub fn new(n: usize) -> Result<Self> {
        check_variables(n)?;
        let len = 1usize << n;
        let mut orbit_of = vec![u32::MAX; len];
        let mut representatives = Vec::new();
        let mut sizes = Vec::new();
        for row in 0..len {
            if orbit_of[row] != u32::MAX {
                continue;
            }
            let id = representatives.len() as u32;
            representatives.push(row);
            let mut size = 0;
            let mut r = row;
            loop {
                if orbit_of[r] == id {
                    break;
                }
                orbit_of[r] = id;
                size += 1;
                r = rotate(n, r);
            }
            sizes.push(size);
        }
        Ok(Self {
            n,
            representatives,
            sizes,
            orbit_of,
        })
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn orbit_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn orbit_of(&self, row: usize) -> usize {
        self.orbit_of[row] as usize
    }

    pub fn orbit_map(&self) -> &[u32] {
        &self.orbit_of
    }

    /// Writes `(-1)^f(x)` of the decoded function into `out` without
    /// materialising the truth table.
    pub fn fill_signal(&self, genotype: &[bool], out: &mut [i32]) {
        debug_assert_eq!(genotype.len(), self.orbit_count());
        for (s, &o) in out.iter_mut().zip(&self.orbit_of) {
            *s = if genotype[o as usize] { -1 } else { 1 };
        }
    }

    /// Weight of the decoded function, computed from orbit sizes.
    pub fn weight(&self, genotype: &[bool]) -> usize {
        genotype
            .iter()
            .zip(&self.sizes)
            .filter(|(&b, _)| b)
            .map(|(_, &s)| s)
            .sum()
    }
}

/// One output bit per orbit, in canonical orbit order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RsGenotype {
    n: usize,
    bits: Vec<bool>,
}

impl RsGenotype {
    pub fn new(n: usize, bits: Vec<bool>) -> Result<Self> {
        let expected = burnside_exponent(n)?;
        if bits.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: bits.len(),
            });
        }
        Ok(Self { n, bits })
    }

    /// Genotype whose bit `j` is bit `j` of `value` (low bit = orbit 0).
    pub fn from_index(n: usize, value: u64) -> Result<Self> {
        let len = burnside_exponent(n)?;
        Ok(Self {
            n,
            bits: (0..len).map(|j| j < 64 && (value >> j) & 1 == 1).collect(),
        })
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        let len = burnside_exponent(n)?;
        Ok(Self {
            n,
            bits: (0..len).map(|_| rng.random()).collect(),
        })
    }

    pub(crate) fn from_parts(n: usize, bits: Vec<bool>) -> Self {
        Self { n, bits }
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bits_mut(&mut self) -> &mut [bool] {
        &mut self.bits
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.bits
    }

    pub fn bit_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    pub fn to_text(&self) -> String {
        format!("n={}\n{}\n", self.n, self.bit_string())
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let (n, body) = parse_header(text)?;
        let (line, body) = body.ok_or_else(|| parse_error(2, 1, "missing genotype line"))?;
        let bits = parse_binary_line(body, line)?;
        let expected = burnside_exponent(n)?;
        if bits.len() != expected {
            return Err(parse_error(
                line,
                bits.len().min(expected) + 1,
                format!("expected {expected} genotype bits, found {}", bits.len()),
            ));
        }
        Ok(Self { n, bits })
    }
}

impl fmt::Display for RsGenotype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bit_string())
    }
}

fn check_table(n: usize, ot: &OrbitTable) -> Result<()> {
    if n != ot.n {
        return Err(Error::LengthMismatch {
            expected: ot.n,
            actual: n,
        });
    }
    Ok(())
}

/// Expands a genotype to the full rotation symmetric truth table.
pub fn decode_rs(g: &RsGenotype, ot: &OrbitTable) -> Result<TruthTable> {
    check_table(g.n, ot)?;
    if g.bits.len() != ot.orbit_count() {
        return Err(Error::LengthMismatch {
            expected: ot.orbit_count(),
            actual: g.bits.len(),
        });
    }
    TruthTable::new(
        g.n,
        ot.orbit_of.iter().map(|&o| g.bits[o as usize]).collect(),
    )
}

/// Inverse of [`decode_rs`]; fails on the first orbit that is not constant.
pub fn encode_rs(tt: &TruthTable, ot: &OrbitTable) -> Result<RsGenotype> {
    check_table(tt.variables(), ot)?;
    let bits: Vec<bool> = ot.representatives.iter().map(|&r| tt.get(r)).collect();
    for (row, &o) in ot.orbit_of.iter().enumerate() {
        if tt.get(row) != bits[o as usize] {
            let orbit = o as usize;
            return Err(Error::NotRotationSymmetric {
                orbit,
                representative: ot.representatives[orbit],
            });
        }
    }
    Ok(RsGenotype {
        n: tt.variables(),
        bits,
    })
}

/// True when the table is invariant under cyclic rotation of its inputs.
pub fn is_rotation_symmetric(tt: &TruthTable) -> bool {
    let n = tt.variables();
    (0..tt.len()).all(|r| tt.get(r) == tt.get(rotate(n, r)))
}
