//! `degseq`: existence checks, fits and enumerations for degree-sequence
//! network models.
//!
//! Every command writes a JSON document to stdout (or an aligned text
//! rendering with `--pretty`). Exit codes: 0 success, 1 the model verdict is
//! "no MLE" (the output is still valid), 2 input error, 3 size or parameter
//! error. Set `DEGSEQ_LOG=debug` for progress logging.

mod commands;
mod input;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use degseq_core::Error;

#[derive(Parser)]
#[command(name = "degseq", version, about = "MLE existence for degree-sequence network models")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads (default: all cores for survey/simulate, 1 otherwise).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Human-readable output instead of JSON.
    #[arg(long, global = true, action = ArgAction::SetTrue)]
    pretty: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Beta,
    Rasch,
    Bt,
    Poisson,
    PoissonUndirected,
    P1Zero,
    P1Const,
    P1Edge,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DesignKind {
    Beta,
    Cayley,
    CayleyFull,
    Poisson,
    Bt,
    Rasch,
    P1Zero,
    P1Const,
    P1Edge,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the MLE exists for an observed table.
    Check {
        #[arg(long, value_enum)]
        model: Model,
        /// Trials per pair for the beta model.
        #[arg(long)]
        trials: Option<u64>,
        /// Subjects (rasch).
        #[arg(long)]
        k: Option<usize>,
        /// Use the float LP instead of the exact certificate.
        #[arg(long, action = ArgAction::SetTrue)]
        float: bool,
        /// Certified exact arithmetic (default).
        #[arg(long, action = ArgAction::SetTrue)]
        exact: bool,
        /// Input file (CSV matrix or JSON), `-` for stdin.
        file: String,
        /// Input format override.
        #[arg(long)]
        format: Option<String>,
    },
    /// Fit parameters by maximum likelihood.
    Fit {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        trials: Option<u64>,
        /// Compute the extended MLE on the boundary face when needed.
        #[arg(long, action = ArgAction::SetTrue)]
        extended: bool,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        file: String,
        #[arg(long)]
        format: Option<String>,
    },
    /// Identify the facial set (estimable cells) of an observed table.
    FacialSet {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        k: Option<usize>,
        file: String,
        #[arg(long)]
        format: Option<String>,
    },
    /// Emit a design matrix as labeled CSV.
    Design {
        #[arg(long, value_enum)]
        model: DesignKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
    },
    /// Enumerate facets or vertices of a model cone or polytope.
    Enumerate {
        #[arg(long, action = ArgAction::SetTrue)]
        facets: bool,
        #[arg(long, action = ArgAction::SetTrue)]
        vertices: bool,
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        n: usize,
        /// Include the facet cell patterns in the output.
        #[arg(long, action = ArgAction::SetTrue)]
        detail: bool,
    },
    /// Exhaustive existence survey over all observable networks.
    Survey {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        n: usize,
    },
    /// Monte Carlo existence probability for the beta model.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        /// Comma-separated propensities (defaults to all zeros).
        #[arg(long)]
        beta: Option<String>,
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exponent for the existence-probability floor report.
        #[arg(long)]
        c: Option<f64>,
        /// Offset constant for the condition report.
        #[arg(long)]
        big_c: Option<f64>,
        /// Write one `replicate,exists` line per replicate to this file.
        #[arg(long)]
        verdicts: Option<String>,
    },
    /// Sample a table from the beta model and print it as CSV.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::NonexistentMle => 1,
        Error::Parse(_) | Error::Consistency(_) => 2,
        Error::Size(_) | Error::Parameter(_) => 3,
        Error::NumericalFailure(_) | Error::LpFailure(_) | Error::NoConvergence(_) => 3,
    }
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("DEGSEQ_LOG")).init();
    let cli = Cli::parse();
    let default_threads = match &cli.command {
        Command::Survey { .. } | Command::Simulate { .. } => num_cpus(),
        _ => 1,
    };
    let threads = cli.threads.unwrap_or(default_threads).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    log::debug!("running with {threads} threads");

    let outcome = pool.install(|| commands::run(&cli.command, cli.pretty));
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(exit_code_for(&err));
        }
    }
}

fn num_cpus() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}
