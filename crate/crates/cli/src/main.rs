use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use rangemode::{Alpha, Config, Engine, Strategy};
use rangemode_cli::bench::{self, BenchParams, OpKind};
use rangemode_cli::fuzz::{self, FuzzParams};
use rangemode_cli::{intersect, trace};

#[derive(Parser)]
#[command(name = "rangemode", version, about = "Dynamic range mode enumeration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct EngineArgs {
    /// simple-rebuild or pcn
    #[arg(long, default_value = "simple-rebuild")]
    strategy: Strategy,
    /// Block count exponent, as a fraction
    #[arg(long, default_value = "1/3")]
    alpha: Alpha,
    /// Check invariants after every update
    #[arg(long)]
    audit: bool,
}

impl EngineArgs {
    fn config(self) -> Config {
        Config {
            alpha: self.alpha,
            strategy: self.strategy,
            audit_mode: self.audit,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run an I/D/Q trace and print one line per query
    Trace {
        /// Trace file; standard input when omitted
        input: Option<PathBuf>,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Compare the engine against a naive oracle on a seeded random trace
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        ops: usize,
        #[arg(long, default_value_t = 2_000)]
        max_len: usize,
        #[arg(long, default_value_t = 26)]
        alphabet: u64,
        #[arg(long, default_value = "pcn")]
        strategy: Strategy,
        /// Run a full audit every N operations
        #[arg(long)]
        audit_every: Option<usize>,
    },
    /// Time operations and print CSV with log-log slopes
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [16384usize, 131072, 1048576])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 26)]
        alphabet: u64,
        /// Comma-separated: insert, delete, update, modes
        #[arg(long, value_delimiter = ',', default_values_t = [OpKind::Update, OpKind::Modes])]
        ops: Vec<OpKind>,
        #[arg(long, default_value_t = 101)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "simple-rebuild")]
        strategy: Strategy,
        /// Every symbol occurs equally often; modes queries span everything
        #[arg(long)]
        tied: bool,
    },
    /// Answer `? i j`, `+ k x`, `- k x` over a family of sets
    Intersect {
        /// File with a `U <size>` line and one `S <elements>` line per set
        family: PathBuf,
        /// Query file; standard input when omitted
        queries: Option<PathBuf>,
        #[command(flatten)]
        engine: EngineArgs,
    },
}

fn open(path: Option<&PathBuf>) -> anyhow::Result<Box<dyn BufRead>> {
    Ok(match path {
        Some(p) => Box::new(BufReader::new(
            File::open(p).with_context(|| format!("cannot open {}", p.display()))?,
        )),
        None => Box::new(io::stdin().lock()),
    })
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let stdout = BufWriter::new(io::stdout().lock());
    match cli.command {
        Command::Trace { input, engine } => {
            let mut e = Engine::new(&[], engine.config())?;
            let name = input
                .as_ref()
                .map_or("<stdin>".into(), |p| p.display().to_string());
            trace::run_trace(&mut e, open(input.as_ref())?, stdout).with_context(|| name)?;
        }
        Command::Fuzz {
            seed,
            ops,
            max_len,
            alphabet,
            strategy,
            audit_every,
        } => {
            let report = fuzz::fuzz(&FuzzParams {
                seed,
                ops,
                max_len,
                alphabet,
                strategy,
                audit_every,
            });
            print!("{report}");
            if !report.is_success() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Bench {
            sizes,
            alphabet,
            ops,
            reps,
            seed,
            strategy,
            tied,
        } => {
            let params = BenchParams {
                sizes,
                alphabet,
                ops,
                reps,
                seed,
                strategy,
                tied,
            };
            bench::bench(&params, stdout)?;
        }
        Command::Intersect {
            family,
            queries,
            engine,
        } => {
            let text = std::fs::read_to_string(&family)
                .with_context(|| format!("cannot read {}", family.display()))?;
            let mut f = intersect::load_family(&text, engine.config())
                .with_context(|| family.display().to_string())?;
            intersect::run_intersect(&mut f, open(queries.as_ref())?, stdout)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
