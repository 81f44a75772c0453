use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use rsbf::rotsym::{burnside_exponent, decode_rs, encode_rs, OrbitTable, RsGenotype};
use rsbf::{Error, PropertyReport, TruthTable};

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// Decide from the payload length: `2^n` bits or `2^n/4` hex digits is a
    /// truth table, `g_n` bits an RS genotype (genotype wins when a binary
    /// payload could be either).
    Auto,
    /// Truth table, binary or hex.
    Tt,
    /// RS genotype in canonical orbit order.
    Rs,
}

fn looks_like_genotype(text: &str) -> bool {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let n = lines
        .next()
        .and_then(|h| h.strip_prefix("n="))
        .and_then(|v| v.trim().parse::<usize>().ok());
    let (Some(n), Some(body)) = (n, lines.next()) else {
        return false;
    };
    let Ok(g) = burnside_exponent(n) else {
        return false;
    };
    let len = body.chars().count();
    len == g && len != 1 << n && body.chars().all(|c| c == '0' || c == '1')
}

/// Parses `text` and renders the property report.
pub fn analyze_text(text: &str, format: InputFormat) -> Result<String, Error> {
    let as_genotype = match format {
        InputFormat::Rs => true,
        InputFormat::Tt => false,
        InputFormat::Auto => looks_like_genotype(text),
    };
    let (tt, genotype) = if as_genotype {
        let g = RsGenotype::parse_text(text)?;
        let ot = OrbitTable::new(g.variables())?;
        (decode_rs(&g, &ot)?, Some(g))
    } else {
        (TruthTable::parse_text(text)?, None)
    };
    let n = tt.variables();
    let p = PropertyReport::of(&tt);
    let ot = OrbitTable::new(n)?;
    let mut s = String::new();
    let source = if genotype.is_some() {
        "rs genotype"
    } else {
        "truth table"
    };
    writeln!(s, "n: {n}").unwrap();
    writeln!(s, "input: {source}").unwrap();
    writeln!(s, "weight: {}", p.weight).unwrap();
    writeln!(s, "balance deficit: {}", p.balance_deficit).unwrap();
    writeln!(s, "nonlinearity: {}", p.nonlinearity).unwrap();
    writeln!(s, "algebraic degree: {}", p.algebraic_degree).unwrap();
    writeln!(
        s,
        "max |W|: {} (attained {} times)",
        p.max_abs_walsh, p.max_count
    )
    .unwrap();
    writeln!(s, "bent: {}", p.is_bent).unwrap();
    match encode_rs(&tt, &ot) {
        Ok(g) => {
            writeln!(s, "rotation symmetric: true").unwrap();
            writeln!(s, "rs genotype: {g}").unwrap();
        }
        Err(Error::NotRotationSymmetric {
            orbit,
            representative,
        }) => {
            writeln!(
                s,
                "rotation symmetric: false (orbit {orbit} with representative {representative:0n$b} is not constant)"
            )
            .unwrap();
        }
        Err(e) => return Err(e),
    }
    writeln!(s, "hex: {}", tt.to_hex()).unwrap();
    Ok(s)
}

pub(crate) fn cmd_analyze(path: &Path, format: InputFormat, out: &mut dyn Write) -> CliResult<()> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let report = analyze_text(&text, format).map_err(|e| match e {
        Error::Parse { .. } => CliError::Failed(format!("{}: {e}", path.display())),
        other => CliError::Core(other),
    })?;
    out.write_all(report.as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_table_n8() {
        let text = format!("n=8\n{}\n", "0".repeat(256));
        let r = analyze_text(&text, InputFormat::Auto).unwrap();
        assert!(r.contains("nonlinearity: 0\n"));
        assert!(r.contains("balance deficit: 128\n"));
        assert!(r.contains("algebraic degree: 0\n"));
        assert!(r.contains("rotation symmetric: true\n"));
        assert!(r.contains("input: truth table\n"));
    }

    #[test]
    fn genotype_input() {
        let r = analyze_text("n=3\n0110\n", InputFormat::Auto).unwrap();
        assert!(r.contains("input: rs genotype\n"));
        assert!(r.contains("weight: 6\n"));
        assert!(r.contains("rs genotype: 0110\n"));
    }

    #[test]
    fn non_rs_detail() {
        let r = analyze_text("n=3\n01000000\n", InputFormat::Tt).unwrap();
        assert!(r.contains("rotation symmetric: false (orbit 1 with representative 001"));
    }

    #[test]
    fn short_table_is_a_parse_error() {
        let text = format!("n=8\n{}\n", "0".repeat(255));
        assert!(matches!(
            analyze_text(&text, InputFormat::Auto),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
