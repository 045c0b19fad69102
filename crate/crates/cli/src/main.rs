mod commands;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use descoh_core::exec::{Execution, Limits};
use serde::de::DeserializeOwned;

/// Descent cocycles, complements, factorizations and non-abelian H1 of
/// finite groups and monoids.
#[derive(Parser, Debug)]
#[command(name = "descoh", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    /// Largest number of candidate maps a brute-force search may visit.
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Catalog run by `verify` when no catalog file is given.
    #[arg(long, global = true, value_name = "PATH")]
    seed_catalog: Option<PathBuf>,
    /// Include per-check wall-clock times in `verify` output.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate an algebra document.
    Validate { file: PathBuf },
    /// List every subgroup in canonical order.
    Subgroups { group: PathBuf },
    /// Complements to a subgroup and their classes under conjugation by it.
    Complements {
        group: PathBuf,
        #[command(flatten)]
        subgroup: SubgroupArgs,
    },
    /// Classes of left descent cocycles for a subgroup inclusion.
    Desc1 {
        group: PathBuf,
        #[command(flatten)]
        subgroup: SubgroupArgs,
    },
    /// Exact factorizations A = BX and their classes.
    Fac { group: PathBuf },
    /// Fixed points and first cohomology of a monoid action.
    H1 { action: PathBuf },
    /// Run the verification suite over a catalog.
    Verify {
        catalog: Option<PathBuf>,
        /// Print the catalog that would run instead of running it.
        #[arg(long)]
        dump_catalog: bool,
    },
}

/// Exactly one way of choosing a subgroup.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct SubgroupArgs {
    /// Generators in cycle notation or as element indices (repeatable).
    #[arg(long, num_args = 1..)]
    gens: Vec<String>,
    /// The alternating subgroup of a symmetric group.
    #[arg(long)]
    alternating: bool,
    /// Position in the `subgroups` listing.
    #[arg(long)]
    index: Option<usize>,
}

impl SubgroupArgs {
    fn spec(&self) -> descoh_core::document::SubgroupSpec {
        use descoh_core::document::SubgroupSpec;
        if self.alternating {
            SubgroupSpec::Alternating(true)
        } else if let Some(k) = self.index {
            SubgroupSpec::Index(k)
        } else {
            SubgroupSpec::Gens(self.gens.clone())
        }
    }
}

/// Why a command failed, which fixes its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Reading or parsing input.
    Input(String),
    /// The input is well-formed but mathematically invalid, or a
    /// computation hit a limit.
    Domain(descoh_core::Error),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(msg) => f.write_str(msg),
            Failure::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<descoh_core::Error> for Failure {
    fn from(e: descoh_core::Error) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Domain(_) => 1,
        }
    }
}

pub fn read_document<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("cannot parse {}: {e}", path.display())))
}

/// What a command prints, and whether it counts as success.
pub struct Output {
    pub text: String,
    pub success: bool,
}

/// Settings shared by every command.
pub struct Context {
    pub format: Format,
    pub limits: Limits,
    pub timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut limits = Limits::default();
    if let Some(budget) = cli.budget {
        limits = limits.with_map_budget(budget);
    }
    if let Some(threads) = cli.threads {
        if threads <= 1 {
            limits = limits.with_execution(Execution::Sequential);
        } else if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Context {
        format: cli.format,
        limits,
        timings: cli.timings,
    };
    let result = match &cli.command {
        Command::Validate { file } => commands::validate(&ctx, file),
        Command::Subgroups { group } => commands::subgroups(&ctx, group),
        Command::Complements { group, subgroup } => {
            commands::complements(&ctx, group, &subgroup.spec())
        }
        Command::Desc1 { group, subgroup } => commands::desc1(&ctx, group, &subgroup.spec()),
        Command::Fac { group } => commands::fac(&ctx, group),
        Command::H1 { action } => commands::h1(&ctx, action),
        Command::Verify {
            catalog,
            dump_catalog,
        } => {
            let path = catalog.as_deref().or(cli.seed_catalog.as_deref());
            commands::verify(&ctx, path, *dump_catalog)
        }
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
