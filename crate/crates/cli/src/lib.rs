//! Batch front end for `bracket-core`: argument parsing, configuration
//! merging, report output and exit codes.

pub mod commands;
pub mod config;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use bracket_core::pieri::PieriKind;
use bracket_core::quotient::{Algebra, ExtraRelation, RelationList};
use bracket_core::relations::Mode;
use bracket_core::verify::Suite;

use config::{Format, HilbertConfig, PieriConfig, RunConfig, TableKind, OUTPUT_DIR_VAR};

/// Process exit status. Ordered so that the worst outcome wins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    Pass = 0,
    Failure = 1,
    Config = 2,
    Budget = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("{0}")]
    Core(bracket_core::Error),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Config(_) | CliError::Io(_) => Exit::Config,
            CliError::Core(e) => match e {
                bracket_core::Error::Budget(_) => Exit::Budget,
                bracket_core::Error::InvalidType(_) | bracket_core::Error::NotCrystallographic(_) | bracket_core::Error::Unsupported(_) => Exit::Config,
                _ => Exit::Failure,
            },
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "bracket", version, about = "Exact verification of bracket-algebra identities for finite Coxeter groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification suites and report every identity checked.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Suites to run (default: all).
        #[arg(long = "suite", value_delimiter = ',')]
        suites: Vec<Suite>,
        /// Degree bound for the span computation (default: l(w0) + 1).
        #[arg(long)]
        span_degree: Option<usize>,
        /// Number of random twisted-Leibniz samples.
        #[arg(long)]
        leibniz_samples: Option<usize>,
        /// Record the running time of every check. Reports with timings are
        /// not reproducible byte for byte.
        #[arg(long)]
        timings: bool,
    },
    /// Emit a Schubert, quantum Schubert, GW, invariant, relation or Dunkl table.
    Table {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        what: Option<TableKind>,
    },
    /// Degree-wise dimensions of a graded quotient of the bracket algebra.
    Hilbert {
        #[command(flatten)]
        common: Common,
        /// Commutative image (default).
        #[arg(long, conflicts_with = "nc")]
        commutative: bool,
        /// Noncommutative quotient.
        #[arg(long)]
        nc: bool,
        /// Relation list for the noncommutative quotient (default: explicit when available).
        #[arg(long)]
        relations: Option<RelationList>,
        /// Additional relation presets (`b2-quartic`).
        #[arg(long = "extra-relation", value_delimiter = ',')]
        extra: Vec<ExtraRelation>,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Largest number of relation rows eliminated in one degree.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Check type-B Pieri identities in the Bruhat representation; `--m`
    /// is the number of Dunkl elements.
    Pieri {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: Option<usize>,
        /// `elementary`, `h2` or `complete-vanish`.
        #[arg(long)]
        kind: Option<PieriKind>,
    },
    /// Emit the Bruhat graph, or the quantum Bruhat graph with --quantum.
    Graph {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Default)]
pub struct Common {
    /// TOML file with a run configuration; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Family (`A`, `B`, `D`, `G`, `I2`) or full name (`B3`, `I2(5)`).
    #[arg(long = "type")]
    pub type_name: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Order of the dihedral type I2(m); for `pieri`, the number of Dunkl elements.
    #[arg(long)]
    pub m: Option<usize>,
    /// Shorthand for --mode quantum.
    #[arg(long, conflicts_with = "mode")]
    pub quantum: bool,
    #[arg(long)]
    pub mode: Option<Mode>,
    /// Parameter values such as `q1=0` or `q2=1/2`.
    #[arg(long = "q", value_parser = parse_assignment)]
    pub q: Vec<(String, String)>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Report path; `-` writes to standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads for independent suites and table rows.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Print the merged configuration as TOML and exit.
    #[arg(long)]
    pub print_config: bool,
}

fn parse_assignment(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
        .ok_or_else(|| format!("expected NAME=VALUE, got {s:?}"))
}

impl Common {
    fn flags(&self) -> RunConfig {
        RunConfig {
            type_name: self.type_name.clone(),
            rank: self.rank,
            m: self.m,
            mode: if self.quantum { Some(Mode::Quantum) } else { self.mode },
            q: self.q.iter().cloned().collect(),
            output: self.output.clone(),
            format: self.format,
            seed: self.seed,
            threads: self.threads,
            ..RunConfig::default()
        }
    }
}

/// Merged configuration for a parsed command line.
pub fn resolve(cli: &Cli) -> Result<(RunConfig, &Common), CliError> {
    let (common, mut flags) = match &cli.command {
        Command::Verify {
            common,
            suites,
            span_degree,
            leibniz_samples,
            timings,
        } => (
            common,
            RunConfig {
                suites: suites.clone(),
                span_degree: *span_degree,
                leibniz_samples: *leibniz_samples,
                timings: timings.then_some(true),
                ..common.flags()
            },
        ),
        Command::Table { common, what } => (common, RunConfig { table: *what, ..common.flags() }),
        Command::Hilbert {
            common,
            commutative,
            nc,
            relations,
            extra,
            max_degree,
            budget,
        } => (
            common,
            RunConfig {
                max_degree: *max_degree,
                budget: *budget,
                hilbert: HilbertConfig {
                    algebra: if *nc {
                        Some(Algebra::Free)
                    } else if *commutative {
                        Some(Algebra::Commutative)
                    } else {
                        None
                    },
                    relations: *relations,
                    extra: extra.clone(),
                },
                ..common.flags()
            },
        ),
        Command::Pieri { common, k, kind } => (
            common,
            RunConfig {
                m: None,
                pieri: PieriConfig { m: common.m, k: *k, kind: *kind },
                ..common.flags()
            },
        ),
        Command::Graph { common } => (common, common.flags()),
    };
    if let Some(path) = &common.config {
        flags = flags.over(&RunConfig::load(path)?);
    }
    Ok((flags, common))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify { .. } => "verify",
        Command::Table { .. } => "table",
        Command::Hilbert { .. } => "hilbert",
        Command::Pieri { .. } => "pieri",
        Command::Graph { .. } => "graph",
    }
}

/// Where the report goes: the configured path, a file in the directory
/// named by the environment, or standard output.
pub fn destination(cfg: &RunConfig, command: &str) -> Option<PathBuf> {
    if let Some(p) = &cfg.output {
        return (p != Path::new("-")).then(|| p.clone());
    }
    let dir = std::env::var_os(OUTPUT_DIR_VAR)?;
    let ty = cfg
        .coxeter_type()
        .map(|t| t.to_string().replace(['(', ')'], "_").trim_end_matches('_').to_string())
        .unwrap_or_else(|_| "run".into());
    Some(PathBuf::from(dir).join(format!("{command}-{ty}.{}", cfg.format().extension())))
}

fn write_report(bytes: &[u8], dest: Option<&Path>) -> Result<(), CliError> {
    match dest {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|e| CliError::Io(format!("{}: {e}", parent.display())))?;
            }
            std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        None => std::io::stdout().lock().write_all(bytes).map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

/// Runs a parsed command line and returns the exit status.
pub fn run(cli: &Cli) -> Exit {
    match try_run(cli) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("bracket: {e}");
            e.exit()
        }
    }
}

fn try_run(cli: &Cli) -> Result<Exit, CliError> {
    let (cfg, common) = resolve(cli)?;
    if common.print_config {
        write_report(cfg.to_toml().as_bytes(), None)?;
        return Ok(Exit::Pass);
    }
    if let Some(n) = cfg.threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be positive".into()));
        }
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let outcome = match &cli.command {
        Command::Verify { .. } => commands::verify(&cfg)?,
        Command::Table { .. } => commands::table(&cfg)?,
        Command::Hilbert { .. } => commands::hilbert(&cfg)?,
        Command::Pieri { .. } => commands::pieri(&cfg)?,
        Command::Graph { .. } => commands::graph(&cfg)?,
    };
    let dest = destination(&cfg, command_name(&cli.command));
    write_report(&outcome.render()?, dest.as_deref())?;
    match &dest {
        Some(p) => eprintln!("{} -> {}", outcome.summary, p.display()),
        None => eprintln!("{}", outcome.summary),
    }
    Ok(outcome.exit)
}
