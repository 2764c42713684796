//! `advicepack` command-line tool.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use advicepack::harness::{
    generate, random_bits, run_matrix, seed_from_env, AlgorithmId, ExperimentConfig, GeneratorKind,
    GeneratorParams, InstanceSource,
};
use advicepack::lower_bounds::{
    binpack_bound, binpack_coefficient, gen_power_sequence, gen_scaled_sequence,
    reduce_bin_packing, PowerFamily, ReductionParams,
};
use advicepack::offline::DEFAULT_NODE_BUDGET;
use advicepack::{opt_exact, packing_violations, BitString, ExactSize, Packing, RequestSequence};
use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Deserialize;

#[derive(Parser)]
#[command(name = "advicepack", version, about = "Online bin packing with advice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance as JSON.
    Generate {
        /// uniform, pairs, triples, t1-family, t2-family or sgkh-bits
        kind: GeneratorKind,
        #[arg(long)]
        n: usize,
        /// Overridden by ADVICEPACK_SEED.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        denominator: Option<i64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve an instance exactly and print the cost and a witness.
    Opt {
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Run algorithms on instances and report one row per pair.
    Run(RunArgs),
    /// Print members of the adversarial families.
    Family {
        #[command(subcommand)]
        family: Family,
    },
    /// Guess a bit string through bin packing with an advice-free algorithm.
    Reduce {
        /// nf, ff, bf or harmonic:K
        #[arg(long, default_value = "bf")]
        inner: AlgorithmId,
        /// A file of 0/1 characters or `random:<seed>`.
        #[arg(long)]
        bits: String,
        /// Number of bits; required for `random:`, a prefix length otherwise.
        #[arg(long)]
        n: Option<usize>,
        /// Also write the constructed instance.
        #[arg(long)]
        instance: Option<PathBuf>,
    },
    /// Evaluate the advice lower bound for competitive ratio `c`.
    Bound {
        #[arg(long)]
        c: ExactSize,
        #[arg(long)]
        n: u64,
    },
    /// Check a packing against an instance; exit status 1 if invalid.
    Verify {
        instance: PathBuf,
        /// JSON `{"bins": [[0, 2], [1]]}` of item indices.
        packing: PathBuf,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    /// Comma-separated algorithm names, e.g. `ff,three-halves,four-thirds:1/12`.
    #[arg(long, value_delimiter = ',', required = true)]
    algo: Vec<AlgorithmId>,
    /// Instance files; ignored when --generator is given.
    instances: Vec<PathBuf>,
    #[arg(long)]
    generator: Option<GeneratorKind>,
    #[arg(long, default_value_t = 12)]
    n: usize,
    /// Overridden by ADVICEPACK_SEED.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Generated instances, seeds `seed, seed+1, …`.
    #[arg(long, default_value_t = 1)]
    repetitions: usize,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Replay this `len:hex` tape instead of calling the oracle.
    #[arg(long)]
    tape: Option<String>,
    #[arg(long)]
    dump_tapes: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
    /// Fill the runtime_ms column.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Family {
    /// Powers-of-two family; prints one instance per line.
    T1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, conflicts_with = "all")]
        index: Option<u128>,
        #[arg(long)]
        all: bool,
    },
    /// Scaled family with capacity 2m.
    T2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Counts of large items per level, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<usize>,
    },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means the command ran but found a violation.
fn dispatch(command: Command) -> Result<bool> {
    match command {
        Command::Generate {
            kind,
            n,
            seed,
            denominator,
            k,
            m,
            output,
        } => {
            let params = GeneratorParams {
                n,
                seed: seed_from_env(seed)?,
                denominator,
                k,
                m,
            };
            emit(output.as_deref(), &generate(kind, &params)?.to_json())?;
            Ok(true)
        }
        Command::Opt { instance, budget } => {
            let seq = read_instance(&instance)?;
            let opt = opt_exact(&seq, budget)?;
            println!("cost {}", opt.cost);
            print_packing(&seq, &opt.witness);
            Ok(true)
        }
        Command::Run(args) => run(args),
        Command::Family { family } => {
            match family {
                Family::T1 { n, k, index, all } => {
                    let family = PowerFamily::new(n, k)?;
                    if all {
                        for v in family {
                            println!("{}", gen_power_sequence(&v).to_json());
                        }
                    } else {
                        let index = index.unwrap_or(0);
                        let Some(v) = family.member(index) else {
                            bail!(
                                "index {index} out of range; the family has {} members",
                                family.size()
                            );
                        };
                        println!("{}", gen_power_sequence(&v).to_json());
                    }
                }
                Family::T2 { n, m, levels } => {
                    println!("{}", gen_scaled_sequence(n, m, &levels)?.sequence.to_json());
                }
            }
            Ok(true)
        }
        Command::Reduce {
            inner,
            bits,
            n,
            instance,
        } => {
            if inner.uses_advice() {
                bail!("inner algorithm {inner} reads advice; pick nf, ff, bf or harmonic:K");
            }
            let bits = read_bits(&bits, n)?;
            let algo = inner.build(&RequestSequence::empty(), BitString::new())?;
            let trace = reduce_bin_packing(algo, &bits, ReductionParams::default())?;
            println!("bits {}", bits.len());
            println!("mistakes {}", trace.guessing.mistakes);
            println!("items {}", trace.instance.len());
            println!("cost {}", trace.cost);
            println!("opt {}", trace.witness.cost());
            println!("extra_bins {}", trace.extra_bins);
            if let Some(path) = instance {
                emit(Some(&path), &trace.instance.to_json())?;
            }
            Ok(trace.guessing.mistakes <= 4 * trace.extra_bins)
        }
        Command::Bound { c, n } => {
            println!("coefficient {:.6}", binpack_coefficient(&c)?);
            match binpack_bound(&c, n) {
                Ok(bound) => println!("bound {bound:.3}"),
                Err(e) => println!("bound undefined: {e}"),
            }
            Ok(true)
        }
        Command::Verify { instance, packing } => {
            let seq = read_instance(&instance)?;
            let text = fs::read_to_string(&packing)
                .with_context(|| format!("reading {}", packing.display()))?;
            let file: PackingFile = serde_json::from_str(&text).context("packing JSON")?;
            let packing = match Packing::from_groups(&seq, &file.bins) {
                Ok(p) => p,
                Err(e) => {
                    println!("invalid: {e}");
                    return Ok(false);
                }
            };
            let violations = packing_violations(&seq, &packing);
            for v in &violations {
                println!("invalid: {v:?}");
            }
            if violations.is_empty() {
                println!("valid, {} bins", packing.cost());
            }
            Ok(violations.is_empty())
        }
    }
}

#[derive(Deserialize)]
struct PackingFile {
    bins: Vec<Vec<usize>>,
}

fn run(args: RunArgs) -> Result<bool> {
    let source = match args.generator {
        Some(kind) => InstanceSource::Generator {
            kind,
            params: GeneratorParams::new(args.n, seed_from_env(args.seed)?),
        },
        None if args.instances.is_empty() => bail!("give instance files or --generator"),
        None => InstanceSource::Files(args.instances),
    };
    let tape = args
        .tape
        .as_deref()
        .map(BitString::from_hex)
        .transpose()
        .context("parsing --tape")?;
    let config = ExperimentConfig {
        algorithms: args.algo,
        source,
        repetitions: args.repetitions,
        node_budget: args.budget,
        timing: args.timing,
        tape,
    };
    let report = run_matrix(&config)?;
    if let Some(path) = &args.csv {
        emit(Some(path), &report.to_csv()?)?;
    }
    if let Some(path) = &args.json {
        emit(Some(path), &report.to_json())?;
    }
    if args.csv.is_none() && args.json.is_none() {
        print!("{}", report.to_csv()?);
    }
    if let Some(path) = &args.dump_tapes {
        emit(Some(path), &report.tapes_json())?;
    }
    Ok(!report.any_violation())
}

fn read_instance(path: &Path) -> Result<RequestSequence> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    RequestSequence::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_bits(spec: &str, n: Option<usize>) -> Result<Vec<bool>> {
    if let Some(seed) = spec.strip_prefix("random:") {
        let seed: u64 = seed.parse().context("random:<seed>")?;
        let Some(n) = n else {
            bail!("--n is required with random bits")
        };
        return Ok(random_bits(n, seed));
    }
    let text = fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
    let mut bits = Vec::new();
    for c in text.chars().filter(|c| !c.is_whitespace()) {
        match c {
            '0' => bits.push(false),
            '1' => bits.push(true),
            _ => bail!("{spec}: unexpected character {c:?}"),
        }
    }
    if let Some(n) = n {
        if n > bits.len() {
            bail!("{spec} has {} bits, fewer than --n {n}", bits.len());
        }
        bits.truncate(n);
    }
    Ok(bits)
}

fn print_packing(seq: &RequestSequence, packing: &Packing) {
    for (i, group) in packing.canonical_groups().iter().enumerate() {
        let sizes: Vec<String> = group
            .iter()
            .map(|&item| seq.items()[item].to_string())
            .collect();
        let load: ExactSize = group.iter().map(|&item| &seq.items()[item]).sum();
        println!(
            "bin {i}: items {group:?} sizes [{}] load {load}",
            sizes.join(", ")
        );
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
