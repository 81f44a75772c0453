//! End-to-end acceptance suite. Runs every criterion in sequence, prints one
//! PASS/FAIL line each and exits non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsbf::genotypes::fp::{fp_decode, fp_decode_bits, int_value, FpGenotype, FpLayout};
use rsbf::oracle::{exhaust_rs, DEFAULT_LIMIT};
use rsbf::rotsym::{decode_rs, encode_rs, rotate, OrbitTable, RsGenotype};
use rsbf::search::{run_batch, EncodingKind, RunConfig};
use rsbf::stats::FiveNumber;
use rsbf::{
    burnside_exponent, fitness_balanced, fitness_bent, nonlinearity, walsh_transform, Objective,
    TruthTable, WalshMode,
};

const ORBIT_COUNTS: [usize; 16] = [
    2, 3, 4, 6, 8, 14, 20, 36, 60, 108, 188, 352, 632, 1182, 2192, 4116,
];
const BURNSIDE_TIME_LIMIT: Duration = Duration::from_millis(1);
const PARSEVAL_TIME_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(1);

const RUNS: usize = 30;
const BASE_SEED: u64 = 0;
const BENT_8_TARGET: u32 = 120;
const BENT_8_MIN_HITS: usize = 15;
const BALANCED_8_BEST: u32 = 116;
const BALANCED_8_MEDIAN: f64 = 114.0;
const BALANCED_9_TARGET: u32 = 240;
const BALANCED_9_FLOOR: u32 = 238;
const SMOKE_10_BUDGET: u64 = 100_000;
const SMOKE_10_FLOOR: u32 = 480;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xacce_0000 + tag)
}

fn burnside() -> Outcome {
    let start = Instant::now();
    let got: Vec<usize> = (1..=16).map(|n| burnside_exponent(n).unwrap()).collect();
    let took = start.elapsed();
    ensure!(got == ORBIT_COUNTS, "got {got:?}");
    ensure!(took < BURNSIDE_TIME_LIMIT, "took {took:?}");
    for n in 1..=12 {
        let orbits = OrbitTable::new(n).unwrap().orbit_count();
        ensure!(
            orbits == got[n - 1],
            "orbit enumeration disagrees at n={n}: {orbits}"
        );
    }
    Ok(format!("n=1..16 exact in {took:?}"))
}

fn transform_equivalence() -> Outcome {
    let start = Instant::now();
    for v in 0..1u32 << 16 {
        let tt = TruthTable::from_fn(4, |r| (v >> r) & 1 == 1).unwrap();
        let fast = walsh_transform(&tt, WalshMode::Fast);
        let naive = walsh_transform(&tt, WalshMode::Naive);
        ensure!(fast == naive, "n=4 table {v:#06x} differs");
    }
    let mut rng = rng(2);
    for n in 5..=10 {
        for k in 0..100 {
            let tt = TruthTable::random(n, &mut rng).unwrap();
            ensure!(
                walsh_transform(&tt, WalshMode::Fast) == walsh_transform(&tt, WalshMode::Naive),
                "n={n} sample {k} differs"
            );
        }
    }
    Ok(format!(
        "65536 tables at n=4, 600 samples n=5..10 in {:?}",
        start.elapsed()
    ))
}

fn parseval() -> Outcome {
    let mut rng = rng(3);
    let tables: Vec<TruthTable> = (0..1000)
        .map(|_| TruthTable::random(8, &mut rng).unwrap())
        .collect();
    let start = Instant::now();
    for (k, tt) in tables.iter().enumerate() {
        let w = walsh_transform(tt, WalshMode::Fast);
        ensure!(w.energy() == 1 << 16, "sample {k}: energy {}", w.energy());
    }
    let took = start.elapsed();
    ensure!(took < PARSEVAL_TIME_LIMIT, "took {took:?}");
    Ok(format!("1000 functions at n=8 in {took:?}"))
}

fn rs_invariance() -> Outcome {
    let mut rng = rng(4);
    let start = Instant::now();
    for n in 3..=12 {
        let ot = OrbitTable::new(n).unwrap();
        for k in 0..1000 {
            let g = RsGenotype::random(n, &mut rng).unwrap();
            let tt = decode_rs(&g, &ot).unwrap();
            let shifted = TruthTable::from_fn(n, |r| tt.get(rotate(n, r))).unwrap();
            ensure!(shifted == tt, "n={n} sample {k} not invariant");
        }
    }
    Ok(format!("10000 genotypes n=3..12 in {:?}", start.elapsed()))
}

fn round_trip() -> Outcome {
    let mut checked = 0u64;
    for n in 1..=4 {
        let ot = OrbitTable::new(n).unwrap();
        for v in 0..1u64 << ot.orbit_count() {
            let g = RsGenotype::from_index(n, v).unwrap();
            let back = encode_rs(&decode_rs(&g, &ot).unwrap(), &ot).unwrap();
            ensure!(back == g, "n={n} index {v}");
            checked += 1;
        }
    }
    let mut rng = rng(5);
    for n in 5..=12 {
        let ot = OrbitTable::new(n).unwrap();
        for k in 0..500 {
            let g = RsGenotype::random(n, &mut rng).unwrap();
            let back = encode_rs(&decode_rs(&g, &ot).unwrap(), &ot).unwrap();
            ensure!(back == g, "n={n} sample {k}");
            checked += 1;
        }
    }
    Ok(format!("{checked} genotypes"))
}

/// Brute-force reference: necklaces by left rotation, nonlinearity as the
/// least Hamming distance to an affine function.
struct Reference {
    best_unrestricted: u32,
    count_unrestricted: u64,
    best_balanced: u32,
    count_balanced: u64,
}

fn reference(n: usize) -> Reference {
    let size = 1usize << n;
    let mask = size - 1;
    let canon = |x: usize| {
        (0..n)
            .map(|s| ((x << s) | (x >> ((n - s) % n))) & mask)
            .min()
            .unwrap()
    };
    let mut reps: Vec<usize> = (0..size).map(canon).collect();
    let class: Vec<usize> = reps.clone();
    reps.sort_unstable();
    reps.dedup();
    let index: Vec<usize> = class
        .iter()
        .map(|c| reps.binary_search(c).unwrap())
        .collect();
    let affine: Vec<Vec<bool>> = (0..size)
        .flat_map(|a| {
            let lin: Vec<bool> = (0..size).map(|x| (a & x).count_ones() % 2 == 1).collect();
            let neg: Vec<bool> = lin.iter().map(|b| !b).collect();
            [lin, neg]
        })
        .collect();
    let mut r = Reference {
        best_unrestricted: 0,
        count_unrestricted: 0,
        best_balanced: 0,
        count_balanced: 0,
    };
    for v in 0..1u64 << reps.len() {
        let f: Vec<bool> = (0..size).map(|x| (v >> index[x]) & 1 == 1).collect();
        let nl = affine
            .iter()
            .map(|l| f.iter().zip(l).filter(|(a, b)| a != b).count() as u32)
            .min()
            .unwrap();
        let bump = |best: &mut u32, count: &mut u64| match nl.cmp(best) {
            std::cmp::Ordering::Greater => {
                *best = nl;
                *count = 1;
            }
            std::cmp::Ordering::Equal => *count += 1,
            std::cmp::Ordering::Less => {}
        };
        bump(&mut r.best_unrestricted, &mut r.count_unrestricted);
        if f.iter().filter(|&&b| b).count() == size / 2 {
            bump(&mut r.best_balanced, &mut r.count_balanced);
        }
    }
    r
}

fn oracle_anchors() -> Outcome {
    let ref4 = reference(4);
    let ref5 = reference(5);
    ensure!(
        ref4.best_unrestricted == 6,
        "reference n=4 unrestricted {}",
        ref4.best_unrestricted
    );
    ensure!(
        ref5.best_balanced == 12,
        "reference n=5 balanced {}",
        ref5.best_balanced
    );

    let start = Instant::now();
    let r4 = exhaust_rs(4, DEFAULT_LIMIT).unwrap();
    let t4 = start.elapsed();
    let start = Instant::now();
    let r5 = exhaust_rs(5, DEFAULT_LIMIT).unwrap();
    let t5 = start.elapsed();
    ensure!(r4.total == 64, "n=4 total {}", r4.total);
    for (r, rf) in [(&r4, &ref4), (&r5, &ref5)] {
        ensure!(
            (r.best_nl_unrestricted, r.count_at_best_unrestricted)
                == (rf.best_unrestricted, rf.count_unrestricted),
            "n={} unrestricted disagrees with reference",
            r.n
        );
        ensure!(
            (r.best_nl_balanced, r.count_at_best_balanced) == (rf.best_balanced, rf.count_balanced),
            "n={} balanced disagrees with reference",
            r.n
        );
    }
    ensure!(
        t4 < ORACLE_TIME_LIMIT && t5 < ORACLE_TIME_LIMIT,
        "took {t4:?} / {t5:?}"
    );
    Ok(format!(
        "n=4 best nl {} ({} functions), n=5 best balanced nl {} in {t4:?} / {t5:?}",
        r4.best_nl_unrestricted, r4.count_at_best_unrestricted, r5.best_nl_balanced
    ))
}

fn batch(n: usize, objective: Objective) -> Vec<u32> {
    let cfg = RunConfig::new(n, EncodingKind::Tt, objective).with_seed(BASE_SEED);
    let b = run_batch(&cfg, RUNS).unwrap();
    assert!(b.results.iter().all(|r| r.evaluations_used == cfg.budget));
    b.results
        .iter()
        .map(|r| {
            if objective == Objective::Balanced {
                assert_eq!(r.bal, 0, "seed {} ended imbalanced", r.seed);
            }
            r.nl
        })
        .collect()
}

fn median(values: &[u32]) -> f64 {
    let v: Vec<f64> = values.iter().map(|&x| x as f64).collect();
    FiveNumber::of(&v).unwrap().median
}

fn bent_8() -> Outcome {
    let start = Instant::now();
    let cfg = RunConfig::new(8, EncodingKind::Tt, Objective::Bent).with_seed(BASE_SEED);
    let b = run_batch(&cfg, RUNS).unwrap();
    let hits = b.results.iter().filter(|r| r.nl >= BENT_8_TARGET).count();
    let med = b.summary.fitness.median;
    let detail = format!(
        "{hits}/{RUNS} runs reach nl {BENT_8_TARGET}, median fitness {med:.2} in {:?}",
        start.elapsed()
    );
    ensure!(hits >= BENT_8_MIN_HITS, "{detail}");
    ensure!(med == BENT_8_TARGET as f64, "{detail}");
    Ok(detail)
}

fn balanced_8() -> Outcome {
    let start = Instant::now();
    let nls = batch(8, Objective::Balanced);
    let best = *nls.iter().max().unwrap();
    let med = median(&nls);
    let detail = format!("best nl {best}, median nl {med} in {:?}", start.elapsed());
    ensure!(best >= BALANCED_8_BEST, "{detail}");
    ensure!(med >= BALANCED_8_MEDIAN, "{detail}");
    Ok(detail)
}

fn balanced_9() -> Outcome {
    let start = Instant::now();
    let nls = batch(9, Objective::Balanced);
    let best = *nls.iter().max().unwrap();
    let took = start.elapsed();

    let cfg = RunConfig::new(10, EncodingKind::Tt, Objective::Balanced)
        .with_seed(BASE_SEED)
        .with_budget(SMOKE_10_BUDGET);
    let smoke = run_batch(&cfg, 1).unwrap().results.remove(0);
    let detail = format!(
        "n=9 best nl {best} (median {}) in {took:?}; n=10 smoke nl {} bal {}",
        median(&nls),
        smoke.nl,
        smoke.bal
    );
    ensure!(best >= BALANCED_9_FLOOR, "{detail}");
    ensure!(smoke.bal == 0 && smoke.nl >= SMOKE_10_FLOOR, "{detail}");
    if best < BALANCED_9_TARGET {
        return Ok(format!(
            "{detail} [warning: below target {BALANCED_9_TARGET}]"
        ));
    }
    Ok(detail)
}

fn balanced_table<R: Rng>(n: usize, rng: &mut R) -> TruthTable {
    let size = 1usize << n;
    let ones = rand::seq::index::sample(rng, size, size / 2);
    let mut bits = vec![false; size];
    for i in ones {
        bits[i] = true;
    }
    TruthTable::new(n, bits).unwrap()
}

fn fitness_properties() -> Outcome {
    let mut rng = rng(10);
    let mut balanced = 0;
    for k in 0..10_000 {
        let tt = if k % 2 == 0 {
            TruthTable::random(8, &mut rng).unwrap()
        } else {
            balanced_table(8, &mut rng)
        };
        let nl = nonlinearity(&walsh_transform(&tt, WalshMode::Naive));
        let fb = fitness_bent(&tt);
        let fl = fitness_balanced(&tt);
        let s = fb.scalar();
        ensure!(
            s.floor() as u32 == nl,
            "sample {k}: floor {} vs nl {nl}",
            s.floor()
        );
        ensure!(
            s - s.floor() < 1.0 && s >= s.floor(),
            "sample {k}: fraction"
        );
        let imbalanced = tt.weight() != 128;
        ensure!((fl.scalar() < 0.0) == imbalanced, "sample {k}: sign");
        if !imbalanced {
            balanced += 1;
            ensure!(
                fl == fb && fl.scalar() == s,
                "sample {k}: objectives differ"
            );
        }
    }
    Ok(format!("10000 functions, {balanced} balanced"))
}

fn evolve_json(out: &std::path::Path) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    for (encoding, engine) in [("tt", "sst"), ("fp", "sst"), ("fp", "de"), ("gp", "sst")] {
        let status = Command::new(env!("CARGO_BIN_EXE_rsbf"))
            .args([
                "evolve",
                "--n",
                "8",
                "--runs",
                "4",
                "--seed",
                "11",
                "--budget",
                "5000",
                "--population",
                "50",
                "--objective",
                "balanced",
                "-q",
                "--encoding",
                encoding,
                "--engine",
                engine,
                "--out",
            ])
            .arg(out)
            .output()
            .expect("spawn rsbf")
            .status;
        assert!(status.success(), "{encoding}/{engine} exited with {status}");
    }
    let mut stack = vec![out.to_path_buf()];
    while let Some(p) = stack.pop() {
        for e in std::fs::read_dir(&p).unwrap() {
            let path = e.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else if path.extension().is_some_and(|x| x == "json") {
                let rel = path.strip_prefix(out).unwrap().display().to_string();
                files.push((rel, std::fs::read(&path).unwrap()));
            }
        }
    }
    files.sort();
    files
}

fn determinism() -> Outcome {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let x = evolve_json(a.path());
    let y = evolve_json(b.path());
    ensure!(x.len() == 16, "expected 16 result files, found {}", x.len());
    for ((pa, da), (pb, db)) in x.iter().zip(&y) {
        ensure!(pa == pb && da == db, "{pa} differs from {pb}");
    }
    Ok(format!("{} result files byte-identical", x.len()))
}

fn fp_conformance() -> Outcome {
    let layout = FpLayout::new(5, 8, 2).unwrap();
    ensure!(layout.dimension() == 4, "dimension {}", layout.dimension());
    ensure!(
        int_value(0.7, 2) == 2,
        "0.7 decodes to {}",
        int_value(0.7, 2)
    );
    let g = FpGenotype::new(vec![0.7, 0.0, 1.0, 0.3]);
    let bits: String = fp_decode_bits(&g, &layout)
        .unwrap()
        .iter()
        .map(|&b| if b { '1' } else { '0' })
        .collect();
    ensure!(bits == "10001101", "decoded {bits}");
    ensure!(
        fp_decode(&g, &layout).unwrap().bit_string() == bits,
        "genotype mismatch"
    );
    for decode in 1..=8 {
        let top = (1u64 << decode) - 1;
        ensure!(int_value(1.0, decode) == top, "clamp at decode {decode}");
        ensure!(int_value(0.0, decode) == 0, "zero at decode {decode}");
    }

    const STEPS: usize = 10_000;
    let base = [0.1, 0.4, 0.6, 0.9];
    for coord in 0..4 {
        let mut prev = 0u64;
        for s in 0..=STEPS {
            let mut v = base;
            v[coord] = s as f64 / STEPS as f64;
            let out = fp_decode_bits(&FpGenotype::new(v.to_vec()), &layout).unwrap();
            let word = |c: usize| (out[2 * c] as u64) << 1 | out[2 * c + 1] as u64;
            let cur = word(coord);
            ensure!(cur >= prev, "coordinate {coord} drops at step {s}");
            for other in (0..4).filter(|&c| c != coord) {
                ensure!(
                    word(other) == int_value(base[other], 2),
                    "coordinate {other} moved"
                );
            }
            prev = cur;
        }
        ensure!(prev == 3, "coordinate {coord} ends at {prev}");
    }
    Ok("worked example, clamp and 4 x 10001-point sweep".into())
}

fn panic_message(p: &(dyn std::any::Any + Send)) -> &str {
    p.downcast_ref::<String>()
        .map(String::as_str)
        .or_else(|| p.downcast_ref::<&str>().copied())
        .unwrap_or("unknown")
}

/// Positional arguments select criteria by number or name fragment. libtest
/// flags are accepted and ignored, including the value of those that take one.
fn filters(mut args: impl Iterator<Item = String>) -> Vec<String> {
    const WITH_VALUE: [&str; 5] = ["--test-threads", "--skip", "--format", "--color", "-Z"];
    let mut out = Vec::new();
    while let Some(a) = args.next() {
        if WITH_VALUE.contains(&a.as_str()) {
            args.next();
        } else if !a.starts_with('-') {
            out.push(a);
        }
    }
    out
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("burnside exactness", burnside),
        ("transform oracle equivalence", transform_equivalence),
        ("parseval", parseval),
        ("rs invariance", rs_invariance),
        ("round trip", round_trip),
        ("oracle anchors", oracle_anchors),
        ("bent n=8 tt", bent_8),
        ("balanced n=8 tt", balanced_8),
        ("balanced n=9 tt and n=10 smoke", balanced_9),
        ("fitness properties", fitness_properties),
        ("cli determinism", determinism),
        ("fp decode conformance", fp_conformance),
    ];
    let filter = filters(std::env::args().skip(1));
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let id = k + 1;
        if !filter.is_empty()
            && !filter.iter().any(|f| match f.parse::<usize>() {
                Ok(k) => k == id,
                Err(_) => name.contains(f.as_str()),
            })
        {
            continue;
        }
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(format!("panicked: {}", panic_message(&*p))));
        match outcome {
            Ok(detail) => println!("PASS  {id:>2} {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {id:>2} {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
