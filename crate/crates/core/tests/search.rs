use rsbf::oracle::{exhaust_rs, DEFAULT_LIMIT};
use rsbf::search::{run, run_batch, EncodingKind, Engine, RunConfig};
use rsbf::{decode_rs, walsh_transform, Objective, OrbitTable, WalshMode};

fn cfg(n: usize, encoding: EncodingKind, objective: Objective) -> RunConfig {
    RunConfig::new(n, encoding, objective)
        .with_population(50)
        .with_budget(20_000)
        .with_seed(7)
}

#[test]
fn runs_are_reproducible() {
    for encoding in [EncodingKind::Tt, EncodingKind::Fp, EncodingKind::Gp] {
        let c = cfg(8, encoding, Objective::Bent).with_budget(3000);
        assert_eq!(run(&c).unwrap(), run(&c).unwrap());
    }
    let de = cfg(8, EncodingKind::Fp, Objective::Balanced)
        .with_engine(Engine::De)
        .with_budget(3000);
    assert_eq!(run(&de).unwrap(), run(&de).unwrap());
}

#[test]
fn small_spaces_reach_the_oracle_optimum() {
    for n in 3..=5 {
        let oracle = exhaust_rs(n, DEFAULT_LIMIT).unwrap();
        let bent = run(&cfg(n, EncodingKind::Tt, Objective::Bent)).unwrap();
        assert_eq!(bent.nl, oracle.best_nl_unrestricted, "n={n}");
        let bal = run(&cfg(n, EncodingKind::Tt, Objective::Balanced)).unwrap();
        assert_eq!(bal.nl, oracle.best_nl_balanced, "n={n}");
        assert_eq!(bal.bal, 0);
    }
}

#[test]
fn engines_never_beat_the_oracle() {
    let oracle = exhaust_rs(6, DEFAULT_LIMIT).unwrap();
    for (encoding, engine) in [
        (EncodingKind::Tt, Engine::Sst),
        (EncodingKind::Fp, Engine::Sst),
        (EncodingKind::Fp, Engine::De),
        (EncodingKind::Gp, Engine::Sst),
    ] {
        let c = cfg(6, encoding, Objective::Balanced)
            .with_engine(engine)
            .with_budget(5000);
        let r = run(&c).unwrap();
        if r.bal == 0 {
            assert!(r.nl <= oracle.best_nl_balanced);
        }
        let c = cfg(6, encoding, Objective::Bent)
            .with_engine(engine)
            .with_budget(5000);
        assert!(run(&c).unwrap().nl <= oracle.best_nl_unrestricted);
    }
}

#[test]
fn reported_best_matches_its_truth_table() {
    let r = run(&cfg(8, EncodingKind::Gp, Objective::Balanced)).unwrap();
    let tt = r.best_truth_table().unwrap();
    let ot = OrbitTable::new(8).unwrap();
    assert_eq!(decode_rs(&r.best_rs_genotype().unwrap(), &ot).unwrap(), tt);
    let w = walsh_transform(&tt, WalshMode::Naive);
    assert_eq!(w.nonlinearity(), r.nl);
    assert_eq!(rsbf::balance_deficit(&tt), r.bal);
}

#[test]
fn oracle_witnesses_verify() {
    for n in 4..=6 {
        let rep = exhaust_rs(n, DEFAULT_LIMIT).unwrap();
        let ot = OrbitTable::new(n).unwrap();
        for (w, nl) in [
            (&rep.witness_unrestricted, rep.best_nl_unrestricted),
            (&rep.witness_balanced, rep.best_nl_balanced),
        ] {
            let g = rsbf::RsGenotype::parse_text(&format!("n={n}\n{w}")).unwrap();
            let tt = decode_rs(&g, &ot).unwrap();
            assert!(rsbf::rotsym::is_rotation_symmetric(&tt));
            assert_eq!(walsh_transform(&tt, WalshMode::Naive).nonlinearity(), nl);
        }
        assert!(rep.best_nl_balanced <= rep.best_nl_unrestricted);
        assert!(rep.best_nl_unrestricted <= rsbf::covering_bound(n).unwrap());
    }
}

#[test]
fn batch_summary_tracks_runs() {
    let b = run_batch(
        &cfg(7, EncodingKind::Tt, Objective::Bent).with_budget(2000),
        5,
    )
    .unwrap();
    assert_eq!(b.summary.runs, 5);
    let max = b
        .results
        .iter()
        .map(|r| r.best_fitness)
        .fold(f64::MIN, f64::max);
    assert_eq!(b.summary.fitness.max, max);
    assert!(b.summary.fitness.min <= b.summary.fitness.median);
}

#[test]
fn result_json_round_trips() {
    let r = run(&cfg(6, EncodingKind::Fp, Objective::Bent).with_budget(500)).unwrap();
    let json = serde_json::to_string(&r).unwrap();
    let back: rsbf::search::RunResult = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.schema_version, rsbf::search::SCHEMA_VERSION);
}
