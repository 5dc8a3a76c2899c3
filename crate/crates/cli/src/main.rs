mod analyze;
mod cache;
mod iso;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use solgraph::catalog::DEFAULT_TIER_THRESHOLD;
use solgraph::graph::DEFAULT_NODE_BUDGET;
use solgraph::solubility::{Limits, DEFAULT_PAIR_BUDGET};
use solgraph::verifier::{ArtifactStore, ContextSource, NoStore, WorkbenchConfig};

use cache::FileCache;

#[derive(Parser)]
#[command(name = "solgraph", version, about = "Solubility graphs of finite insoluble groups")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
    Csv,
}

#[derive(Args, Clone)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "md", global = true)]
    pub format: Format,
    /// Worker threads; defaults to the machine's parallelism.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Cache directory.
    #[arg(long, env = "SOLGRAPH_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Recompute everything and compare against the cached entries.
    #[arg(long, global = true, conflicts_with = "no_cache")]
    pub verify_cache: bool,
    /// Cap on pair-solubility evaluations per group.
    #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET, global = true)]
    pub budget_pairs: u64,
    /// Cap on canonical-labeling search nodes per graph.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET, global = true)]
    pub budget_iso_nodes: u64,
    /// Largest vertex count for which the graph is built.
    #[arg(long, default_value_t = DEFAULT_TIER_THRESHOLD, global = true)]
    pub tier_threshold: u64,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Report every elapsed time as 0.
    #[arg(long, global = true)]
    pub no_timings: bool,
    /// Also write the rendered output to this file.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of one group.
    Analyze(analyze::AnalyzeArgs),
    /// Run claim checkers over the catalog.
    Verify(verify::VerifyArgs),
    /// Decide whether two solubility graphs are isomorphic.
    Iso(iso::IsoArgs),
    /// List claim ids and what each checks.
    Claims,
}

/// A failure with its exit code.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_SPEC: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

impl From<solgraph::Error> for Failure {
    fn from(e: solgraph::Error) -> Self {
        let code = if e.is_budget_error() {
            EXIT_BUDGET
        } else if e.is_spec_error() || matches!(e, solgraph::Error::UnknownClaim(_)) {
            EXIT_SPEC
        } else {
            EXIT_CHECK_FAILED
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_CHECK_FAILED, format!("i/o error: {e}"))
    }
}

/// Shared state handed to each command.
pub struct Session {
    pub args: GlobalArgs,
    pub cache: Option<Arc<FileCache>>,
    pub source: ContextSource,
}

impl Session {
    fn open(args: GlobalArgs) -> Result<Session, Failure> {
        let config = WorkbenchConfig {
            limits: Limits {
                pair_calls: args.budget_pairs,
                ..Limits::default()
            },
            tier_threshold: args.tier_threshold,
            node_budget: args.budget_iso_nodes,
        };
        let cache = if args.no_cache {
            None
        } else {
            let dir = args.cache_dir.clone().unwrap_or_else(cache::default_dir);
            Some(Arc::new(FileCache::open(&dir, args.verify_cache)?))
        };
        let store: Arc<dyn ArtifactStore> = match &cache {
            Some(c) => c.clone(),
            None => Arc::new(NoStore),
        };
        Ok(Session {
            source: ContextSource::new(config, store),
            cache,
            args,
        })
    }

    /// Prints `text` and writes it to `--output` if given.
    pub fn emit(&self, text: &str) -> Result<(), Failure> {
        print!("{text}");
        if !text.ends_with('\n') {
            println!();
        }
        if let Some(path) = &self.args.output {
            std::fs::write(path, text)?;
        }
        Ok(())
    }

    /// Cache statistics on stderr; with `--verify-cache`, mismatches fail.
    fn finish(&self) -> Result<(), Failure> {
        let Some(c) = &self.cache else { return Ok(()) };
        let s = c.stats();
        if self.args.verify_cache {
            eprintln!("cache verify: {} compared, {} mismatched", s.verified, s.mismatched);
            if s.mismatched > 0 {
                for m in c.mismatches() {
                    eprintln!("  mismatch: {m}");
                }
                return Err(Failure::new(EXIT_CHECK_FAILED, "cached entries differ from recomputation"));
            }
        } else {
            eprintln!("cache: {} hits, {} misses, {} writes", s.hits, s.misses, s.writes);
        }
        Ok(())
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if let Some(j) = cli.global.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| Failure::new(EXIT_CHECK_FAILED, e.to_string()))?;
    }
    let session = Session::open(cli.global)?;
    let code = match cli.command {
        Command::Analyze(a) => analyze::run(&session, &a)?,
        Command::Verify(a) => verify::run(&session, &a)?,
        Command::Iso(a) => iso::run(&session, &a)?,
        Command::Claims => verify::list_claims(&session)?,
    };
    session.finish()?;
    Ok(code)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("solgraph: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
