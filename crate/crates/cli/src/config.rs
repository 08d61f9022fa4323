//! Command-line parsing and validation into a [`RunConfig`].

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::error::{CliError, CliResult};
use crate::output::Format;

/// Environment variable consulted for `--seed`.
pub const SEED_ENV: &str = "PROJMEAS_SEED";

pub const DEFAULT_FIGURE_DIMS: [usize; 5] = [2, 4, 6, 8, 10];
pub const DEFAULT_LIMIT_DIMS: [usize; 6] = [2, 10, 100, 1_000, 10_000, 100_000];
pub const DEFAULT_VERIFY_DIMS: [usize; 3] = [2, 3, 4];
pub const MIN_VERIFY_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankSpec {
    All,
    List(Vec<usize>),
}

impl RankSpec {
    /// Ranks to evaluate in dimension `d`.
    pub fn ranks_for(&self, d: usize) -> CliResult<Vec<usize>> {
        match self {
            RankSpec::All => Ok((1..=d).collect()),
            RankSpec::List(ranks) => {
                if let Some(r) = ranks.iter().find(|&&r| r == 0 || r > d) {
                    return Err(CliError::usage(format!("rank {r} is outside 1..={d}")));
                }
                Ok(ranks.clone())
            }
        }
    }
}

impl FromStr for RankSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(RankSpec::All);
        }
        parse_list(s).map(RankSpec::List)
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|e| format!("invalid integer {part:?}: {e}"))
        })
        .collect()
}

#[derive(Debug, Parser)]
#[command(
    name = "projmeas",
    version,
    about = "Information gain, fidelity and efficiency of rank-r projective measurements"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,

    /// Write to this file instead of standard output (not used by `figures`).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Closed-form I(m), F(m), p(m) and E_F(m) for each (d, r).
    Report(ReportArgs),
    /// Figure data files fig1..fig4.
    Figures(FigureArgs),
    /// Monte Carlo verification of the closed forms.
    Verify(VerifyArgs),
    /// Information gain at r = 1 against its large-d limit.
    Limits(LimitArgs),
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long = "dim", alias = "dims", value_delimiter = ',', required = true)]
    pub dims: Vec<usize>,
    #[arg(long = "rank", alias = "ranks", default_value = "all")]
    pub ranks: RankSpec,
    #[arg(long = "kappa-sq", default_value_t = 1.0)]
    pub kappa_sq: f64,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long = "dims", alias = "dim", value_delimiter = ',', default_values_t = DEFAULT_FIGURE_DIMS)]
    pub dims: Vec<usize>,
    #[arg(long = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "dims", alias = "dim", value_delimiter = ',', default_values_t = DEFAULT_VERIFY_DIMS)]
    pub dims: Vec<usize>,
    #[arg(long = "rank", alias = "ranks", default_value = "all")]
    pub ranks: RankSpec,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for sampling (defaults to all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Offset added to every analytic value; exercises the failure path.
    #[arg(long, hide = true, default_value_t = 0.0, allow_hyphen_values = true)]
    pub perturb_analytic: f64,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[arg(long = "dims", alias = "dim", value_delimiter = ',', default_values_t = DEFAULT_LIMIT_DIMS)]
    pub dims: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Report,
    Figures,
    Verify,
    Limits,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OutputTarget {
    Stdout,
    File(PathBuf),
    /// Directory receiving one file per figure.
    Directory(PathBuf),
}

/// Fully validated run parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub dims: Vec<usize>,
    pub ranks: RankSpec,
    pub samples: u64,
    pub seed: u64,
    pub kappa_sq: f64,
    pub output: OutputTarget,
    pub format: Format,
    pub threads: Option<usize>,
    pub perturb_analytic: f64,
}

impl RunConfig {
    fn base(command: CommandKind, dims: Vec<usize>, format: Format, output: OutputTarget) -> Self {
        Self {
            command,
            dims,
            ranks: RankSpec::All,
            samples: 0,
            seed: 0,
            kappa_sq: 1.0,
            output,
            format,
            threads: None,
            perturb_analytic: 0.0,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.dims.is_empty() {
            return Err(CliError::usage("empty dimension list"));
        }
        if self.dims.contains(&0) {
            return Err(CliError::usage("dimensions must be at least 1"));
        }
        for &d in &self.dims {
            self.ranks.ranks_for(d)?;
        }
        if !(self.kappa_sq > 0.0 && self.kappa_sq <= 1.0) {
            return Err(CliError::usage(format!(
                "--kappa-sq must lie in (0, 1], got {}",
                self.kappa_sq
            )));
        }
        match self.command {
            CommandKind::Verify => {
                if self.samples < MIN_VERIFY_SAMPLES {
                    return Err(CliError::usage(format!(
                        "--samples must be at least {MIN_VERIFY_SAMPLES}"
                    )));
                }
                if self.threads == Some(0) {
                    return Err(CliError::usage("--threads must be positive"));
                }
                if !self.perturb_analytic.is_finite() {
                    return Err(CliError::usage("--perturb-analytic must be finite"));
                }
            }
            CommandKind::Limits => {
                if self.dims.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(CliError::usage("limits needs strictly ascending --dims"));
                }
                if self.dims[0] < 2 {
                    return Err(CliError::usage("limits needs dimensions >= 2"));
                }
            }
            CommandKind::Figures if self.dims.contains(&1) => {
                return Err(CliError::usage("figure dimensions must be at least 2"));
            }
            _ => {}
        }
        Ok(())
    }
}

impl TryFrom<Cli> for RunConfig {
    type Error = CliError;

    fn try_from(cli: Cli) -> CliResult<Self> {
        let stream = match cli.output {
            Some(path) => OutputTarget::File(path),
            None => OutputTarget::Stdout,
        };
        let config = match cli.command {
            CliCommand::Report(a) => RunConfig {
                ranks: a.ranks,
                kappa_sq: a.kappa_sq,
                ..Self::base(CommandKind::Report, a.dims, cli.format, stream)
            },
            CliCommand::Figures(a) => Self::base(
                CommandKind::Figures,
                a.dims,
                cli.format,
                OutputTarget::Directory(a.out),
            ),
            CliCommand::Verify(a) => RunConfig {
                ranks: a.ranks,
                samples: a.samples,
                seed: a.seed,
                threads: a.threads,
                perturb_analytic: a.perturb_analytic,
                ..Self::base(CommandKind::Verify, a.dims, cli.format, stream)
            },
            CliCommand::Limits(a) => Self::base(CommandKind::Limits, a.dims, cli.format, stream),
        };
        config.validate()?;
        Ok(config)
    }
}
