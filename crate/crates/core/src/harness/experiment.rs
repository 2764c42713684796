use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;

use super::algorithms::{run_algorithm, run_with_tape, AlgorithmId, AlgorithmRun};
use super::generate::{generate, GeneratorKind, GeneratorParams};
use super::report::{join_flags, MatrixReport, ReportRow, RowFlag, TapeRecord};
use crate::error::{Error, Result};
use crate::model::{verify_packing, RequestSequence};
use crate::offline::{opt_exact, OptSolution, DEFAULT_NODE_BUDGET};
use crate::tape::BitString;

/// Environment variable that overrides the generator seed.
pub const SEED_ENV: &str = "ADVICEPACK_SEED";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceSource {
    /// JSON instance files, one instance each.
    Files(Vec<PathBuf>),
    /// `repetitions` instances with seeds `seed, seed + 1, …`.
    Generator {
        kind: GeneratorKind,
        params: GeneratorParams,
    },
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub algorithms: Vec<AlgorithmId>,
    pub source: InstanceSource,
    pub repetitions: usize,
    pub node_budget: u64,
    /// Fill `runtime_ms`; off by default so reports are reproducible.
    pub timing: bool,
    /// Replaces the oracle's tape for every advice algorithm.
    pub tape: Option<BitString>,
}

impl ExperimentConfig {
    pub fn new(algorithms: Vec<AlgorithmId>, source: InstanceSource) -> Self {
        ExperimentConfig {
            algorithms,
            source,
            repetitions: 1,
            node_budget: DEFAULT_NODE_BUDGET,
            timing: false,
            tape: None,
        }
    }
}

/// Reads `ADVICEPACK_SEED`, falling back to `default` when unset.
pub fn seed_from_env(default: u64) -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| Error::Harness(format!("{SEED_ENV}={text:?} is not a u64"))),
        Err(_) => Ok(default),
    }
}

/// Instances in report order, each with its id.
pub fn load_instances(
    source: &InstanceSource,
    repetitions: usize,
) -> Result<Vec<(String, RequestSequence)>> {
    match source {
        InstanceSource::Files(paths) => paths
            .iter()
            .map(|path| {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Harness(format!("{}: {e}", path.display())))?;
                Ok((
                    path.display().to_string(),
                    RequestSequence::from_json(&text)?,
                ))
            })
            .collect(),
        InstanceSource::Generator { kind, params } => (0..repetitions as u64)
            .map(|i| {
                let params = GeneratorParams {
                    seed: params.seed.wrapping_add(i),
                    ..params.clone()
                };
                let seq = generate(*kind, &params)?;
                Ok((format!("{kind}:{}", params.seed), seq))
            })
            .collect(),
    }
}

/// Runs every algorithm on every instance. Rows come back ordered by
/// instance, then by the config's algorithm order, whatever the thread
/// count. Errors land in the row's `error` column.
pub fn run_matrix(config: &ExperimentConfig) -> Result<MatrixReport> {
    let instances = load_instances(&config.source, config.repetitions)?;
    let cells: Vec<Vec<(ReportRow, Option<TapeRecord>)>> = instances
        .par_iter()
        .map(|(id, seq)| {
            let opt = opt_exact(seq, config.node_budget).ok();
            config
                .algorithms
                .iter()
                .map(|algo| run_cell(config, id, seq, opt.as_ref(), algo))
                .collect()
        })
        .collect();
    let mut report = MatrixReport::default();
    for (row, tape) in cells.into_iter().flatten() {
        report.rows.push(row);
        report.tapes.extend(tape);
    }
    Ok(report)
}

fn run_cell(
    config: &ExperimentConfig,
    instance: &str,
    seq: &RequestSequence,
    opt: Option<&OptSolution>,
    algo: &AlgorithmId,
) -> (ReportRow, Option<TapeRecord>) {
    let mut flags = Vec::new();
    if opt.is_none() {
        flags.push(RowFlag::OptUnknown);
    }
    let mut row = ReportRow {
        instance: instance.to_string(),
        n: seq.len(),
        opt: opt.map(|o| o.cost),
        algorithm: algo.to_string(),
        cost: None,
        ratio: None,
        advice_bits: None,
        flags: String::new(),
        runtime_ms: None,
        error: String::new(),
    };
    let start = Instant::now();
    let outcome = match (&config.tape, algo.uses_advice()) {
        (Some(tape), true) => run_with_tape(algo, seq, tape.clone()).map(|result| AlgorithmRun {
            result,
            tape: Some(tape.clone()),
        }),
        _ => run_algorithm(algo, seq, opt, config.node_budget),
    };
    if config.timing {
        row.runtime_ms = Some((start.elapsed().as_secs_f64() * 1e6).round() / 1e3);
    }
    let run = match outcome {
        Ok(run) => run,
        Err(e) => {
            row.error = e.to_string();
            row.flags = join_flags(&mut flags);
            return (row, None);
        }
    };
    let result = &run.result;
    if !verify_packing(seq, &result.packing) || result.cost != result.packing.cost() {
        flags.push(RowFlag::InvalidPacking);
    }
    if result.advice_inconsistent {
        flags.push(RowFlag::Inconsistent);
    }
    if let Some(budget) = algo.advice_budget(seq, opt.map(|o| o.cost)) {
        if !budget.admits(result.advice_bits_read) {
            flags.push(RowFlag::OverBudget);
        }
    }
    if let Some(opt) = opt {
        if algo.guarantee_holds(seq.len(), result.cost, opt.cost) == Some(false) {
            flags.push(RowFlag::GuaranteeViolated);
        }
        if opt.cost > 0 {
            row.ratio = Some(result.cost as f64 / opt.cost as f64);
        }
    }
    row.cost = Some(result.cost);
    row.advice_bits = Some(result.advice_bits_read);
    row.flags = join_flags(&mut flags);
    let tape = run.tape.map(|t| TapeRecord {
        instance: instance.to_string(),
        algorithm: algo.to_string(),
        tape: t.to_hex(),
    });
    (row, tape)
}
