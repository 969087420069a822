//! `ndip` command-line front end.

mod commands;
mod csv_out;
mod dispatch;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ndip::io::Problem;

#[derive(Parser, Debug)]
#[command(
    name = "ndip",
    version,
    about = "Exact IP models for graphs of small neighborhood diversity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the twin classes of an instance
    Nd { file: PathBuf },
    /// Solve an instance with one model/backend or algorithm
    Solve {
        file: PathBuf,
        #[command(flatten)]
        opts: SolveArgs,
        /// Append one CSV row to this file (header written when the file is new)
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Omit wall-clock times so reports are reproducible byte for byte
        #[arg(long)]
        no_timing: bool,
    },
    /// Cross-check every applicable model, backend and algorithm against the exhaustive oracle
    Verify {
        file: PathBuf,
        #[arg(long)]
        problem: Option<ProblemArg>,
        #[arg(long)]
        q: Option<usize>,
    },
    /// Graver basis and decomposition report for the multiplicity model of a graph
    Graver {
        file: PathBuf,
        /// Enumerate up to this l-infinity norm instead of running the completion procedure
        #[arg(long)]
        cap: Option<i64>,
        /// Also check the stacking bound (slow beyond a dozen columns)
        #[arg(long)]
        stacking: bool,
        /// Element limit for the completion procedure
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Solve a seeded batch of random blow-up instances and report CSV
    Bench {
        #[command(flatten)]
        opts: SolveArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: u64,
        /// Largest number of template classes
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        /// Largest number of vertices
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Largest vertex capacity (CDS only)
        #[arg(long, default_value_t = 4)]
        max_cap: u32,
        /// Worker threads; rows are still written in instance order
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the CSV here instead of standard output
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        no_timing: bool,
        /// Also write each generated instance to this directory as seed<N>.txt
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct SolveArgs {
    /// Problem to solve; defaults to the problem named in the file
    #[arg(long)]
    problem: Option<ProblemArg>,
    /// cds: convex | ilp; sumcol: nfold | convexfd (alias convex) | graver; maxqcut: quadratic
    #[arg(long)]
    model: Option<ModelArg>,
    #[arg(long, default_value = "boxed")]
    backend: BackendArg,
    /// Run an algorithm instead of a model (proximity and rounding are CDS only)
    #[arg(long, conflicts_with_all = ["model"])]
    algo: Option<AlgoArg>,
    /// Number of parts for Max-q-Cut; overrides the file
    #[arg(long)]
    q: Option<usize>,
    /// Colors available to the n-fold model (default |G|)
    #[arg(long)]
    colors: Option<usize>,
    /// Search budget: nodes (boxed), DP states (nfold) or basis elements (augment)
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ProblemArg {
    Cds,
    Sumcol,
    Maxqcut,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Problem {
        match p {
            ProblemArg::Cds => Problem::Cds,
            ProblemArg::Sumcol => Problem::SumCol,
            ProblemArg::Maxqcut => Problem::MaxQCut,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModelArg {
    Convex,
    Ilp,
    Nfold,
    Convexfd,
    Graver,
    Quadratic,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum BackendArg {
    Boxed,
    Nfold,
    Augment,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum AlgoArg {
    Proximity,
    Rounding,
    Brute,
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Ok = 0,
    Infeasible = 1,
    Budget = 2,
    Input = 3,
    /// `verify` found disagreeing answers.
    Mismatch = 4,
}

/// A failure with its exit status.
#[derive(Debug)]
struct Failure {
    status: Status,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            status: Status::Input,
            message: message.into(),
        }
    }
}

impl From<ndip::Error> for Failure {
    fn from(e: ndip::Error) -> Self {
        use ndip::Error as E;
        let status = match e {
            E::BudgetExceeded(_) | E::GraverIncomplete(_) | E::SizeGuard(_) => Status::Budget,
            _ => Status::Input,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Nd { file } => commands::nd(&file),
        Command::Solve {
            file,
            opts,
            csv,
            no_timing,
        } => commands::solve(&file, &opts, csv.as_deref(), no_timing),
        Command::Verify { file, problem, q } => {
            commands::verify(&file, problem.map(Problem::from), q)
        }
        Command::Graver {
            file,
            cap,
            stacking,
            budget,
        } => commands::graver(&file, cap, stacking, budget),
        Command::Bench {
            opts,
            seed,
            count,
            max_k,
            max_n,
            max_cap,
            jobs,
            csv,
            no_timing,
            emit,
        } => {
            let batch = commands::Batch {
                seed,
                count,
                max_k,
                max_n,
                max_cap,
                jobs,
                emit,
            };
            commands::bench(&opts, &batch, csv.as_deref(), no_timing)
        }
    };
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(f) => {
            eprintln!("ndip: {}", f.message);
            ExitCode::from(f.status as u8)
        }
    }
}
