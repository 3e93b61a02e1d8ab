//! Command-line front end. Exit codes: 0 all checks pass, 1 validation
//! failure, 2 schema error, 3 search budget exhausted.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::job::{self, Job, Outcome, RunOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "wonder", version, about = "Cohomology of projective wonderful models of toric arrangements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Job file (JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Subdivision budget for `goodfan --search`.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fan goodness and building-set checks.
    Validate,
    /// The intersection poset of the layers.
    Poset,
    /// Nested sets of G and of G together with the boundary divisors.
    Nested,
    /// Presentation of the model's integer cohomology ring.
    Present,
    /// Presentation of the cohomology of a boundary stratum.
    Stratum {
        /// Members `g<k>` (1-based) and rays `r<k>` (0-based), comma separated.
        #[arg(long)]
        nested: String,
    },
    /// Betti numbers from the blowup formula.
    Betti,
    /// Presentation Hilbert vector against the Betti oracle.
    Check,
    /// Goodness of the fan; with `--search`, subdivide until good.
    Goodfan {
        #[arg(long)]
        search: bool,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Schema(_) | Error::MalformedFan(_) | Error::NotSplit(_) | Error::NotSaturated | Error::NotContained(_) => EXIT_SCHEMA,
        Error::BudgetExhausted(_) => EXIT_BUDGET,
        _ => EXIT_VALIDATION,
    }
}

/// Seed for searches, from `WONDER_SEED` (0 when unset).
pub fn seed_from_env() -> Result<u64, Error> {
    match std::env::var("WONDER_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Error::Schema(format!("WONDER_SEED must be an unsigned integer, found {s:?}"))),
        Err(_) => Ok(0),
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, Error> {
    let path = cli.input.as_ref().ok_or_else(|| Error::Schema("--input is required".into()))?;
    let job = Job::load(path)?;
    let run = RunOptions {
        max_degree: cli.max_degree.or(job.spec.options.max_degree),
        budget: cli.budget,
        seed: seed_from_env()?,
    };
    match &cli.command {
        Command::Validate => job::validate(&job),
        Command::Poset => job::poset(&job),
        Command::Nested => job::nested(&job),
        Command::Present => job::present(&job, &run),
        Command::Stratum { nested } => job::stratum(&job, nested, &run),
        Command::Betti => job::betti(&job),
        Command::Check => job::check(&job, &run),
        Command::Goodfan { search } => job::goodfan(&job, *search, &run),
    }
}

fn emit(cli: &Cli, body: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(p) => std::fs::write(p, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    }
}

/// Runs the parsed command and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    if let Some(n) = cli.jobs {
        // only fails if a pool already exists, which leaves the old one in use
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match execute(cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json serializes") + "\n",
                Format::Text => out.text.clone(),
            };
            if let Err(e) = emit(cli, &body) {
                eprintln!("error: {e}");
                return EXIT_SCHEMA;
            }
            if out.ok {
                EXIT_OK
            } else {
                EXIT_VALIDATION
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn main() -> ! {
    let cli = Cli::parse();
    std::process::exit(run(&cli))
}
