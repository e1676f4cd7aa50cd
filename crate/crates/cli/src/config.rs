//! Command-line arguments and their validated form.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use fermispin::bell::Route;
use fermispin::{Bipartition, Builder, Limits, SubsystemMask};

use crate::error::CliError;

/// Environment variable that overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "FERMISPIN_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "fermispin",
    version,
    about = "Exact spin density matrices, entanglement and CHSH values for N-fermion singlets"
)]
pub struct Cli {
    /// Output document format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Directory for cached density matrices.
    #[arg(long, env = CACHE_DIR_ENV, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Largest particle count for dense matrices.
    #[arg(long, global = true)]
    pub max_n: Option<usize>,

    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuilderArg {
    Pairing,
    Slater,
    Singlet,
}

impl From<BuilderArg> for Builder {
    fn from(b: BuilderArg) -> Self {
        match b {
            BuilderArg::Pairing => Builder::Pairing,
            BuilderArg::Slater => Builder::Slater,
            BuilderArg::Singlet => Builder::Singlet,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Full,
    Reduced,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Build the N-spin density matrix.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = BuilderArg::Pairing)]
        builder: BuilderArg,
        /// Also emit every nonzero entry.
        #[arg(long)]
        entries: bool,
    },
    /// Partial trace onto a subset of spins.
    Reduce {
        #[arg(long)]
        n: usize,
        /// Spins to keep, e.g. `keep=0,1`.
        #[arg(long)]
        keep: String,
    },
    /// Pair spin correlation.
    Correlate {
        #[arg(long)]
        n: u64,
    },
    /// Partial-transpose spectrum and negativity for a split `i,j|k,l`.
    Negativity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        split: String,
    },
    /// Negative principal minor of the partial transpose for a split `i,j|k,l`.
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        split: String,
    },
    /// CHSH value for one spin against the rest.
    Chsh {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = RouteArg::Reduced)]
        route: RouteArg,
    },
    /// Von Neumann entropy of the N-spin state.
    Entropy {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = BuilderArg::Pairing)]
        builder: BuilderArg,
    },
    /// Reproduce every closed-form value and compare with expectations.
    Report,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Build {
        n: usize,
        builder: Builder,
        entries: bool,
    },
    Reduce {
        n: usize,
        mask: SubsystemMask,
    },
    Correlate {
        n: u64,
    },
    Negativity {
        n: usize,
        split: Bipartition,
    },
    Witness {
        n: usize,
        split: Bipartition,
    },
    Chsh {
        n: u64,
        route: Route,
    },
    Entropy {
        n: usize,
        builder: Builder,
    },
    Report,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Build { .. } => "build",
            Command::Reduce { .. } => "reduce",
            Command::Correlate { .. } => "correlate",
            Command::Negativity { .. } => "negativity",
            Command::Witness { .. } => "witness",
            Command::Chsh { .. } => "chsh",
            Command::Entropy { .. } => "entropy",
            Command::Report => "report",
        }
    }
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub limits: Limits,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let limits = match cli.max_n {
            Some(m) => Limits::with_max_n(m).map_err(CliError::usage)?,
            None => Limits::default(),
        };
        let command = match cli.command {
            CommandArgs::Build {
                n,
                builder,
                entries,
            } => Command::Build {
                n: even(n)?,
                builder: builder.into(),
                entries,
            },
            CommandArgs::Reduce { n, keep } => Command::Reduce {
                n: even(n)?,
                mask: parse_mask(&keep, n)?,
            },
            CommandArgs::Correlate { n } => Command::Correlate { n: even_u64(n)? },
            CommandArgs::Negativity { n, split } => Command::Negativity {
                n: even(n)?,
                split: parse_split(&split, n)?,
            },
            CommandArgs::Witness { n, split } => Command::Witness {
                n: even(n)?,
                split: parse_split(&split, n)?,
            },
            CommandArgs::Chsh { n, route } => Command::Chsh {
                n: even_u64(n)?,
                route: match route {
                    RouteArg::Full => Route::Full,
                    RouteArg::Reduced => Route::Reduced,
                },
            },
            CommandArgs::Entropy { n, builder } => Command::Entropy {
                n: even(n)?,
                builder: builder.into(),
            },
            CommandArgs::Report => Command::Report,
        };
        Ok(RunConfig {
            command,
            format: cli.format,
            cache_dir: cli.cache_dir,
            limits,
        })
    }
}

fn even(n: usize) -> Result<usize, CliError> {
    even_u64(n as u64).map(|_| n)
}

fn even_u64(n: u64) -> Result<u64, CliError> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(CliError::usage_msg(format!(
            "--n must be even and >= 2, got {n}"
        )));
    }
    Ok(n)
}

fn parse_indices(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| CliError::usage_msg(format!("'{t}' is not a spin index")))
        })
        .collect()
}

/// Parses `keep=i,j,...` (the `keep=` prefix is optional).
pub fn parse_mask(s: &str, n: usize) -> Result<SubsystemMask, CliError> {
    let list = s.strip_prefix("keep=").unwrap_or(s);
    SubsystemMask::new(&parse_indices(list)?, n).map_err(CliError::usage)
}

/// Parses `i,j,...|k,l,...`.
pub fn parse_split(s: &str, n: usize) -> Result<Bipartition, CliError> {
    let (a, b) = s
        .split_once('|')
        .ok_or_else(|| CliError::usage_msg(format!("split '{s}' must look like 0,1|2,3")))?;
    Bipartition::from_parts(&parse_indices(a)?, &parse_indices(b)?, n).map_err(CliError::usage)
}
