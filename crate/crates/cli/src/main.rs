//! `qmono`: compute bipartition monotones, generate states, run checks.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or usage error.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qubit_monotones::monotones::{all_partitions_report, partition_report};
use qubit_monotones::partition::Partition;
use qubit_monotones::state::{make_named_state, parse_state, serialize_state, StateKind, StateLabel};
use qubit_monotones::verify::{run_suite, Suite};

use output::Columns;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "qmono", version, about = "Bipartition entanglement monotones of N-qubit pure states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate D, E and auxiliary invariants of a state file.
    Compute(ComputeArgs),
    /// Write a named state in the state file format.
    Gen(GenArgs),
    /// Run a randomized verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["partition", "all_partitions"]))]
struct ComputeArgs {
    /// State file (JSON with `n_qubits` and `amplitudes`).
    #[arg(long)]
    state: PathBuf,
    /// Selected qubits, 1-based, comma separated (e.g. `3,4`).
    #[arg(long)]
    partition: Option<String>,
    /// Report every admissible partition.
    #[arg(long)]
    all_partitions: bool,
    #[arg(long, value_enum, default_value_t = MonotoneArg::Both)]
    monotone: MonotoneArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output path; stdout when absent.
    #[arg(short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MonotoneArg {
    D,
    E,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// One of ghz, w, bell, product-zero, haar-random.
    name: String,
    /// Number of qubits.
    qubits: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// plucker, cauchy-binet, lu, slocc, permutation, monotonicity, lmn, pfaffian or all.
    suite: String,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Failure carrying the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<qubit_monotones::Error> for Failure {
    fn from(e: qubit_monotones::Error) -> Self {
        Failure::input(e.to_string())
    }
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_compute(args: &ComputeArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&args.state)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", args.state.display())))?;
    let state = parse_state(&text)?;
    let reports = match &args.partition {
        Some(spec) => vec![partition_report(&state, &Partition::parse(state.num_qubits(), spec)?)?],
        None => all_partitions_report(&state)?,
    };
    let cols = match args.monotone {
        MonotoneArg::D => Columns { d: true, e: false },
        MonotoneArg::E => Columns { d: false, e: true },
        MonotoneArg::Both => Columns { d: true, e: true },
    };
    let doc = match args.format {
        Format::Json => output::to_json(state.num_qubits(), &reports, cols),
        Format::Csv => output::to_csv(&reports, cols).map_err(|e| Failure::input(e.to_string()))?,
    };
    emit(&doc, args.output.as_deref())
}

fn cmd_gen(args: &GenArgs) -> Result<(), Failure> {
    let kind: StateKind = args.name.parse()?;
    let mut label = StateLabel::new(kind, args.qubits);
    if let Some(seed) = args.seed {
        label = label.with_seed(seed);
    }
    let state = make_named_state(label)?;
    emit(&serialize_state(&state), args.output.as_deref())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let suite: Suite = args.suite.parse()?;
    let trials = usize::try_from(args.trials).map_err(|_| Failure::input("trial count too large"))?;
    let results = run_suite(suite, trials, args.seed)?;
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    println!(
        "{suite}: {}/{} properties passed (seed {}, {} trials)",
        results.len() - failed,
        results.len(),
        args.seed,
        trials
    );
    if failed > 0 {
        return Err(Failure {
            code: EXIT_VERIFY_FAILED,
            message: format!("{failed} propert{} failed", if failed == 1 { "y" } else { "ies" }),
        });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("qmono: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
