use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use lieforge::cli::{
    cmd_construct, cmd_decompose, cmd_scan, cmd_table, cmd_verify, Budget, CliError, DecomposeRequest, Functor,
    SampleOptions, What,
};
use lieforge::report::RunReport;
use lieforge::weights::tables::Table;

#[derive(Parser)]
#[command(name = "lieforge", version, about = "Exact constructions and checks for s-representations")]
struct Args {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct Sampling {
    /// Check the Jacobi identity on all triples.
    #[arg(long)]
    full: bool,
    /// Number of random triples when not running a full check.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

impl From<Sampling> for SampleOptions {
    fn from(s: Sampling) -> Self {
        SampleOptions { full: s.full, samples: s.samples, seed: s.seed }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WhatArg {
    TrivialMult,
    Norm2,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctorArg {
    Ext,
    Sym,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    Real,
    Complex,
    Quaternionic,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Build a Lie algebra from a representation and check it.
    Construct {
        /// f4, e6, e7, e8, sp3, n6, cp<n>, hp<n>, sphere<n> or spin<n>.
        target: String,
        /// Write structure constants to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Check the Jacobi identity and form invariance of a structure-constant file.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Test which spin representations can complete so(n) to a root system.
    Scan { min: usize, max: usize },
    /// Exterior or symmetric powers of a representation of a classical algebra.
    Decompose {
        /// A<r>, B<r>, C<r> or D<r>.
        algebra: String,
        /// standard, adjoint, spin, halfspin+, halfspin- or hw=<c1>,<c2>,...
        rep: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long, value_enum, default_value = "ext")]
        functor: FunctorArg,
        #[arg(long, value_enum, default_value = "full")]
        what: WhatArg,
        /// Fail unless the computed value equals this.
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<i64>,
    },
    /// Check the classical rows of the classification tables.
    Table {
        #[arg(value_enum, default_value = "all")]
        which: TableArg,
    },
}

fn run(args: Args) -> Result<RunReport, CliError> {
    let budget = Budget::from_env()?;
    match args.command {
        Command::Construct { target, out, sampling } => cmd_construct(&target, &sampling.into(), out.as_ref(), budget),
        Command::Verify { file, sampling } => cmd_verify(&file, &sampling.into()),
        Command::Scan { min, max } => cmd_scan(min, max),
        Command::Decompose { algebra, rep, power, functor, what, expect } => {
            let req = DecomposeRequest {
                algebra: &algebra,
                rep: &rep,
                power,
                functor: match functor {
                    FunctorArg::Ext => Functor::Ext,
                    FunctorArg::Sym => Functor::Sym,
                },
                what: match what {
                    WhatArg::TrivialMult => What::TrivialMult,
                    WhatArg::Norm2 => What::Norm2,
                    WhatArg::Full => What::Full,
                },
                expect,
            };
            cmd_decompose(&req, budget)
        }
        Command::Table { which } => cmd_table(match which {
            TableArg::Real => Some(Table::Real),
            TableArg::Complex => Some(Table::Complex),
            TableArg::Quaternionic => Some(Table::Quaternionic),
            TableArg::All => None,
        }),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = args.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("thread pool is built once");
    }
    let report_path = args.report.clone();
    let timing = args.timing;
    let start = Instant::now();
    let mut report = match run(args) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if timing {
        report.timing = Some(start.elapsed().as_secs_f64());
    }
    let json = report.to_canonical_json();
    match report_path {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, json) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(1);
            }
            print!("{}", report.summary());
        }
        None => print!("{json}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
