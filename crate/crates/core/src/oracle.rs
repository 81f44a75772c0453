//! Exhaustive enumeration of every rotation symmetric function of `n`
//! variables. Genotypes are visited as integers `0..2^g_n` (low bit =
//! orbit 0) and evaluated with the naive transform, so the oracle shares no
//! code path with the fast transform used during search.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boolean::{balance_deficit, nonlinearity, walsh_transform, WalshMode};
use crate::error::{Error, Result};
use crate::rotsym::{burnside_exponent, decode_rs, OrbitTable, RsGenotype};

/// Default enumeration limit: every RS function up to `n = 6`.
pub const DEFAULT_LIMIT: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustReport {
    pub n: usize,
    pub total: u64,
    pub best_nl_unrestricted: u32,
    pub count_at_best_unrestricted: u64,
    /// Genotype bits of the lowest-index optimum.
    pub witness_unrestricted: String,
    pub best_nl_balanced: u32,
    pub count_at_best_balanced: u64,
    pub witness_balanced: String,
}

#[derive(Debug, Clone, Copy)]
struct Best {
    nl: u32,
    count: u64,
    witness: u64,
}

fn merge(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(match a.nl.cmp(&b.nl) {
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Equal => Best {
                nl: a.nl,
                count: a.count + b.count,
                witness: a.witness.min(b.witness),
            },
        }),
    }
}

fn single(nl: u32, index: u64) -> Option<Best> {
    Some(Best {
        nl,
        count: 1,
        witness: index,
    })
}

pub fn exhaust_rs(n: usize, limit: u64) -> Result<ExhaustReport> {
    let exponent = burnside_exponent(n)?;
    if exponent >= 64 || (1u64 << exponent) > limit {
        return Err(Error::TooLarge { exponent, limit });
    }
    let total = 1u64 << exponent;
    let ot = OrbitTable::new(n)?;
    let (any, balanced) = (0..total)
        .into_par_iter()
        .map(|index| {
            let g = RsGenotype::from_index(n, index).expect("valid n");
            let tt = decode_rs(&g, &ot).expect("matching orbit table");
            let nl = nonlinearity(&walsh_transform(&tt, WalshMode::Naive));
            let bal = if balance_deficit(&tt) == 0 {
                single(nl, index)
            } else {
                None
            };
            (single(nl, index), bal)
        })
        .reduce(|| (None, None), |a, b| (merge(a.0, b.0), merge(a.1, b.1)));
    let any = any.expect("at least two functions");
    // the parity function is rotation symmetric and balanced for every n
    let balanced = balanced.expect("a balanced RS function exists");
    let witness = |i| RsGenotype::from_index(n, i).expect("valid n").bit_string();
    Ok(ExhaustReport {
        n,
        total,
        best_nl_unrestricted: any.nl,
        count_at_best_unrestricted: any.count,
        witness_unrestricted: witness(any.witness),
        best_nl_balanced: balanced.nl,
        count_at_best_balanced: balanced.count,
        witness_balanced: witness(balanced.witness),
    })
}
