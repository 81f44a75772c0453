use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rsbf::search::{run_batch_with, EncodingKind, Engine, RunConfig, RunResult};

use crate::stats::{summary_csv, Metric, SummaryRow};
use crate::{CliError, CliResult, EvolveArgs};

pub(crate) fn config_from(args: &EvolveArgs) -> RunConfig {
    let mut cfg = RunConfig::new(args.n, args.encoding.into(), args.objective.into());
    cfg.engine = args.engine.into();
    cfg.population_size = args.population;
    cfg.budget = args.budget;
    cfg.mutation_probability = args.pmut;
    cfg.seed = args.seed;
    cfg.decode = args.decode;
    cfg.max_depth = args.max_depth;
    cfg.de_f = args.de_f;
    cfg.de_cr = args.de_cr;
    cfg
}

/// `tt`, `gp`, `fp` for FP under the steady-state GA and `fp-de` for FP under DE.
fn encoding_dir(cfg: &RunConfig) -> String {
    match (cfg.encoding, cfg.engine) {
        (EncodingKind::Fp, Engine::De) => "fp-de".into(),
        (e, _) => e.as_str().into(),
    }
}

pub(crate) fn output_dir(root: &Path, cfg: &RunConfig) -> PathBuf {
    root.join(cfg.n.to_string())
        .join(encoding_dir(cfg))
        .join(cfg.objective.as_str())
}

/// Writes `contents` next to `path` and renames it into place.
pub(crate) fn write_atomic(path: &Path, contents: &[u8]) -> CliResult<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents).map_err(|e| CliError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
}

pub(crate) fn result_json(r: &RunResult) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("serializable result");
    s.push('\n');
    s
}

pub(crate) fn cmd_evolve(
    args: &EvolveArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<()> {
    let cfg = config_from(args);
    if args.runs == 0 {
        return Err(CliError::Usage("--runs must be at least 1".into()));
    }
    if args.jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;

    let dir = output_dir(&args.out, &cfg);
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = args.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Failed(format!("thread pool: {e}")))?;

    let progress = std::sync::Mutex::new(Vec::<String>::new());
    let batch = pool.install(|| {
        run_batch_with(&cfg, args.runs, |r| {
            if !args.quiet {
                progress.lock().expect("progress lock").push(format!(
                    "seed {}: nl {} fitness {:.4}",
                    r.seed, r.nl, r.best_fitness
                ));
            }
        })
    })?;
    for line in progress.into_inner().expect("progress lock") {
        let _ = writeln!(err, "{line}");
    }

    for r in &batch.results {
        let path = dir.join(format!("run_{}.json", r.seed));
        write_atomic(&path, result_json(r).as_bytes())?;
    }
    let rows = [SummaryRow::from_config(
        &cfg,
        &batch.results,
        Metric::Fitness,
    )];
    write_atomic(&dir.join("summary.csv"), summary_csv(&rows).as_bytes())?;
    let rows = [SummaryRow::from_config(&cfg, &batch.results, Metric::Nl)];
    write_atomic(&dir.join("summary_nl.csv"), summary_csv(&rows).as_bytes())?;

    let best = batch
        .results
        .iter()
        .max_by(|a, b| {
            a.best_fitness
                .total_cmp(&b.best_fitness)
                .then(b.seed.cmp(&a.seed))
        })
        .expect("non-empty batch");
    let s = &batch.summary;
    let text = format!(
        "runs: {}\nbest nl: {} (seed {})\nbest fitness: {:.4}\nmedian fitness: {:.4}\nmedian nl: {}\noutput: {}\n",
        s.runs,
        best.nl,
        best.seed,
        best.best_fitness,
        s.fitness.median,
        s.nl.median,
        dir.display()
    );
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))
}
