//! Truth tables, the Walsh-Hadamard spectrum, and the cryptographic
//! properties derived from them.
//!
//! Row `i` of a truth table holds `f(x)` where `x = (x0, ..., x_{n-1})` is the
//! binary expansion of `i` with `x0` as the most significant bit. Row 0 is the
//! all-zero input and row `2^n - 1` the all-one input.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{parse_error, Error, Result};

/// Largest supported variable count.
pub const MAX_VARIABLES: usize = 16;

pub(crate) fn check_variables(n: usize) -> Result<()> {
    if (1..=MAX_VARIABLES).contains(&n) {
        Ok(())
    } else {
        Err(Error::VariableCount(n))
    }
}

/// The full value table of an `n`-variable Boolean function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    bits: Vec<bool>,
}

impl TruthTable {
    pub fn new(n: usize, bits: Vec<bool>) -> Result<Self> {
        check_variables(n)?;
        if bits.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                actual: bits.len(),
            });
        }
        Ok(Self { n, bits })
    }

    pub fn zero(n: usize) -> Result<Self> {
        check_variables(n)?;
        Ok(Self {
            n,
            bits: vec![false; 1 << n],
        })
    }

    /// Builds a table by evaluating `f` on every row index.
    pub fn from_fn(n: usize, f: impl FnMut(usize) -> bool) -> Result<Self> {
        check_variables(n)?;
        Ok(Self {
            n,
            bits: (0..1usize << n).map(f).collect(),
        })
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        Self::from_fn(n, |_| rng.random())
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

    pub fn get(&self, row: usize) -> bool {
        self.bits[row]
    }

    pub fn flip(&mut self, row: usize) {
        self.bits[row] = !self.bits[row];
    }

    /// Value of variable `x_var` in row `row` (x0 is the most significant bit).
    pub fn input_bit(n: usize, row: usize, var: usize) -> bool {
        (row >> (n - 1 - var)) & 1 == 1
    }

    /// Number of rows where the function is one.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// The function as a `+1/-1` signal, `(-1)^f(x)`.
    pub fn signal(&self) -> Vec<i32> {
        self.bits.iter().map(|&b| if b { -1 } else { 1 }).collect()
    }

    /// Two-line text form: `n=<k>` followed by the `2^k` table characters.
    pub fn to_text(&self) -> String {
        format!("n={}\n{}\n", self.n, self.bit_string())
    }

    pub fn bit_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    /// Hex form, most significant nibble first, row 0 in the high bit of the
    /// first digit. For `n < 2` the whole table is a single right-aligned digit.
    pub fn to_hex(&self) -> String {
        if self.n < 2 {
            let v = self.bits.iter().fold(0u8, |acc, &b| (acc << 1) | b as u8);
            return format!("{v:x}");
        }
        self.bits
            .chunks(4)
            .map(|c| {
                let v = c.iter().fold(0u8, |acc, &b| (acc << 1) | b as u8);
                char::from_digit(v as u32, 16).unwrap()
            })
            .collect()
    }

    /// Parses a hex string produced by [`TruthTable::to_hex`].
    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        Self::parse_hex_line(n, hex, 1)
    }

    fn parse_hex_line(n: usize, hex: &str, line: usize) -> Result<Self> {
        check_variables(n)?;
        let digits: Vec<char> = hex.chars().collect();
        let expected = if n < 2 { 1 } else { (1usize << n) / 4 };
        if digits.len() != expected {
            return Err(parse_error(
                line,
                digits.len().min(expected) + 1,
                format!("expected {expected} hex digits, found {}", digits.len()),
            ));
        }
        let mut bits = Vec::with_capacity(1 << n);
        for (col, c) in digits.iter().enumerate() {
            let v = c
                .to_digit(16)
                .ok_or_else(|| parse_error(line, col + 1, format!("invalid hex digit {c:?}")))?;
            if n < 2 {
                let width = 1 << n;
                if v >= 1 << width {
                    return Err(parse_error(line, col + 1, "hex value too large"));
                }
                bits.extend((0..width).rev().map(|k| (v >> k) & 1 == 1));
            } else {
                bits.extend((0..4).rev().map(|k| (v >> k) & 1 == 1));
            }
        }
        Self::new(n, bits)
    }

    /// Parses the two-line text form. The second line may be either the
    /// binary table or its hex form.
    pub fn parse_text(text: &str) -> Result<Self> {
        let (n, body) = parse_header(text)?;
        let (line, body) = body.ok_or_else(|| parse_error(2, 1, "missing table line"))?;
        let len = body.chars().count();
        if len == 1 << n && body.chars().all(|c| c == '0' || c == '1') {
            let bits = parse_binary_line(body, line)?;
            return Self::new(n, bits);
        }
        let hex_len = if n < 2 { 1 } else { (1usize << n) / 4 };
        if len == hex_len {
            return Self::parse_hex_line(n, body, line);
        }
        // Report the first offending position against the binary form.
        parse_binary_line(body, line)?;
        Err(parse_error(
            line,
            len.min(1 << n) + 1,
            format!("expected {} table bits, found {len}", 1usize << n),
        ))
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bit_string())
    }
}

/// Splits an `n=<k>` header from the following payload line.
/// Blank lines and surrounding whitespace are ignored.
pub(crate) fn parse_header(text: &str) -> Result<(usize, Option<(usize, &str)>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, 1, "empty input"))?;
    let value = header
        .strip_prefix("n=")
        .ok_or_else(|| parse_error(hline, 1, "expected header \"n=<k>\""))?;
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| parse_error(hline, 3, format!("invalid variable count {value:?}")))?;
    if !(1..=MAX_VARIABLES).contains(&n) {
        return Err(parse_error(
            hline,
            3,
            format!("variable count {n} out of range 1..=16"),
        ));
    }
    let body = lines.next();
    if let Some((extra, _)) = lines.next() {
        return Err(parse_error(extra, 1, "unexpected trailing content"));
    }
    Ok((n, body))
}

pub(crate) fn parse_binary_line(body: &str, line: usize) -> Result<Vec<bool>> {
    body.chars()
        .enumerate()
        .map(|(col, c)| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(parse_error(
                line,
                col + 1,
                format!("invalid character {c:?}"),
            )),
        })
        .collect()
}

/// Walsh-Hadamard spectrum: entry `a` holds `W_f(a) = sum_x (-1)^(f(x) + a.x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: usize,
    values: Vec<i32>,
}

/// Which algorithm computes the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalshMode {
    /// Direct double sum, `2^(2n)` work.
    Naive,
    /// In-place butterfly, `n 2^n` work.
    Fast,
}

impl WalshSpectrum {
    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn max_abs(&self) -> i32 {
        self.values.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// Number of positions attaining [`WalshSpectrum::max_abs`].
    pub fn max_count(&self) -> usize {
        let m = self.max_abs();
        self.values.iter().filter(|v| v.abs() == m).count()
    }

    /// Sum of squared coefficients; `2^(2n)` for every Boolean function.
    pub fn energy(&self) -> i64 {
        self.values.iter().map(|&v| (v as i64) * (v as i64)).sum()
    }

    pub fn nonlinearity(&self) -> u32 {
        nonlinearity(self)
    }
}

/// In-place unnormalised Walsh-Hadamard butterfly in natural order.
pub fn fwht_in_place(data: &mut [i32]) {
    let len = data.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in data.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

pub fn walsh_transform(tt: &TruthTable, mode: WalshMode) -> WalshSpectrum {
    let values = match mode {
        WalshMode::Naive => walsh_naive(tt),
        WalshMode::Fast => {
            let mut s = tt.signal();
            fwht_in_place(&mut s);
            s
        }
    };
    WalshSpectrum { n: tt.n, values }
}

fn walsh_naive(tt: &TruthTable) -> Vec<i32> {
    let size = tt.len();
    (0..size)
        .map(|a| {
            (0..size)
                .map(|x| {
                    let parity = tt.bits[x] as u32 + (a & x).count_ones();
                    if parity.is_multiple_of(2) {
                        1
                    } else {
                        -1
                    }
                })
                .sum()
        })
        .collect()
}

/// `2^(n-1) - max|W(a)| / 2`.
pub fn nonlinearity(w: &WalshSpectrum) -> u32 {
    let half = 1u32 << (w.n - 1);
    half - (w.max_abs() as u32) / 2
}

/// Number of bits to flip to make the function balanced.
pub fn balance_deficit(tt: &TruthTable) -> u32 {
    let half = 1usize << (tt.n - 1);
    tt.weight().abs_diff(half) as u32
}

/// Algebraic normal form coefficients via the binary Moebius transform.
/// Entry `u` is the coefficient of the monomial whose variables are the set
/// bits of `u` (in the same bit convention as row indices).
pub fn anf(tt: &TruthTable) -> Vec<bool> {
    let mut coeffs = tt.bits.clone();
    let len = coeffs.len();
    let mut h = 1;
    while h < len {
        for i in 0..len {
            if i & h != 0 {
                coeffs[i] ^= coeffs[i ^ h];
            }
        }
        h *= 2;
    }
    coeffs
}

/// Size of the largest monomial in the algebraic normal form; 0 for constants.
pub fn algebraic_degree(tt: &TruthTable) -> u32 {
    anf(tt)
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(u, _)| u.count_ones())
        .max()
        .unwrap_or(0)
}

/// Upper bound on nonlinearity: the covering radius bound for even `n`,
/// `2 floor(2^(n-2) - 2^(n/2-2))` for odd `n`.
pub fn covering_bound(n: usize) -> Result<u32> {
    check_variables(n)?;
    if n.is_multiple_of(2) {
        Ok((1u32 << (n - 1)) - (1u32 << (n / 2 - 1)))
    } else {
        let inner = 2f64.powi(n as i32 - 2) - 2f64.powf(n as f64 / 2.0 - 2.0);
        Ok(2 * inner.floor() as u32)
    }
}

/// Properties reported by the analyzer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub n: usize,
    pub weight: usize,
    pub nonlinearity: u32,
    pub balance_deficit: u32,
    pub algebraic_degree: u32,
    pub is_bent: bool,
    pub max_abs_walsh: i32,
    pub max_count: usize,
}

impl PropertyReport {
    pub fn of(tt: &TruthTable) -> Self {
        let w = walsh_transform(tt, WalshMode::Fast);
        let nl = nonlinearity(&w);
        let n = tt.n;
        let is_bent = n.is_multiple_of(2) && nl == (1u32 << (n - 1)) - (1u32 << (n / 2 - 1));
        Self {
            n,
            weight: tt.weight(),
            nonlinearity: nl,
            balance_deficit: balance_deficit(tt),
            algebraic_degree: algebraic_degree(tt),
            is_bent,
            max_abs_walsh: w.max_abs(),
            max_count: w.max_count(),
        }
    }
}
