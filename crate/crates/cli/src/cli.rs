//! Argument parsing and dispatch for the `ionphot` binary.

use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};

use ionphot::Method;

use crate::commands::{self, write_artifacts};
use crate::config::{Format, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "ionphot",
    version,
    about = "Photonic laser-delivery circuits for multi-zone ion traps"
)]
pub struct Cli {
    /// TOML run configuration; defaults apply when omitted
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory, overrides [output].dir
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output formats, repeatable; overrides [output].formats
    #[arg(long, global = true, value_enum)]
    format: Vec<FormatArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Graph,
    Digraph,
    Table,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Graph => Format::Graph,
            FormatArg::Digraph => Format::Digraph,
            FormatArg::Table => Format::Table,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Bubble,
    Blockwise,
    Bus,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Bubble => Method::BubbleSort,
            MethodArg::Blockwise => Method::BlockwiseDuplication,
            MethodArg::Bus => Method::CrossingFreeBus,
        }
    }
}

#[derive(Args, Debug, Default)]
struct Shape {
    /// Number of wavelengths
    #[arg(long)]
    m: Option<u32>,
    /// Number of zones
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Synthesize one circuit and export it
    Synth(Shape),
    /// Compare all three methods against their closed forms
    Analyze(Shape),
    /// Transmission surface over zones and one loss parameter
    Sweep,
    /// Required power ratio curves and zone capacity per laser
    Capacity,
    /// Strontium-ion delivery layout on two sides of the trap
    Casestudy(Shape),
}

/// Runs one subcommand and returns the files it wrote.
pub fn run(cli: Cli) -> Result<Vec<PathBuf>> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(out) = cli.out {
        config.output.dir = out;
    }
    if !cli.format.is_empty() {
        config.output.formats = cli.format.into_iter().map(Format::from).collect();
    }
    let shape = |config: &mut RunConfig, s: &Shape, case: bool| {
        if case {
            if let Some(n) = s.n {
                config.casestudy.n = n;
            }
            if let Some(method) = s.method {
                config.casestudy.method = method.into();
            }
        } else {
            if let Some(m) = s.m {
                config.circuit.m = m;
            }
            if let Some(n) = s.n {
                config.circuit.n = n;
            }
            if let Some(method) = s.method {
                config.circuit.method = method.into();
            }
        }
    };
    let artifacts = match &cli.command {
        Command::Synth(s) => {
            shape(&mut config, s, false);
            config.validate()?;
            commands::synth(&config)?
        }
        Command::Analyze(s) => {
            shape(&mut config, s, false);
            config.validate()?;
            commands::analyze(&config)?
        }
        Command::Sweep => {
            config.validate()?;
            commands::sweep(&config)?
        }
        Command::Capacity => {
            config.validate()?;
            commands::capacity(&config)?
        }
        Command::Casestudy(s) => {
            shape(&mut config, s, true);
            config.validate()?;
            commands::casestudy(&config)?
        }
    };
    write_artifacts(&config.output.dir, &artifacts)
}

/// Parses `args` (program name first) and runs the subcommand. Parse
/// errors come back as errors instead of exiting.
pub fn run_args<I, T>(args: I) -> Result<Vec<PathBuf>>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run(Cli::try_parse_from(args)?)
}
