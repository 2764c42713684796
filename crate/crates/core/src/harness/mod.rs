//! Experiment harness: instance generators, the algorithm registry used by
//! the CLI, and the run matrix that turns (instance, algorithm) pairs into
//! verified report rows.
//!
//! Every row's packing is re-checked with [`verify_packing`](crate::verify_packing)
//! and every advice cost comes from tape accounting. Reports are
//! deterministic for a fixed seed unless timing is switched on.

mod algorithms;
mod experiment;
mod generate;
mod report;

pub use algorithms::{
    run_algorithm, run_with_tape, universe_of, AdviceBudget, AlgorithmId, AlgorithmRun,
};
pub use experiment::{
    load_instances, run_matrix, seed_from_env, ExperimentConfig, InstanceSource, SEED_ENV,
};
pub use generate::{generate, random_bits, GeneratorKind, GeneratorParams, UNIFORM_DENOMINATOR};
pub use report::{MatrixReport, ReportRow, RowFlag, TapeRecord, CSV_COLUMNS};
