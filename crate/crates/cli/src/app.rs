//! Argument parsing and output handling for the `mwbound` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{Format, Mode, RunConfig, SweepConfig};
use crate::error::CliError;
use crate::presets::{list_presets, surface_preset};
use crate::report::Report;
use crate::run::{execute, RunOptions};

#[derive(Debug, Parser)]
#[command(name = "mwbound", version, about = "Mordell-Weil rank bounds under Galois base change")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; defaults to the config's `format`, then text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Directory of cached character tables.
    #[arg(long, global = true, env = mwbound::characters::CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Add the heuristic refined ε section to bounds reports.
    #[arg(long, global = true)]
    pub refined: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank bounds for a surface and cover.
    Bounds(Input),
    /// The ε linear program for a group and Σ.
    Epsilon(Input),
    /// Check a config without computing bounds.
    Validate(Input),
    /// Property sweeps over generated inputs.
    Sweep(SweepArgs),
    /// List shipped group and surface presets.
    Presets,
    /// Run the mode named in the config (bounds when absent).
    Run(Input),
}

#[derive(Debug, Args)]
pub struct Input {
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    pub config: Option<PathBuf>,
    /// A shipped surface preset, see `mwbound presets`.
    #[arg(long)]
    pub preset: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    Abelian,
    Random,
    Presets,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// A config whose `sweep` section describes the sweep.
    #[arg(long, conflicts_with = "kind")]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub kind: Option<SweepKind>,
    /// Random specs to generate.
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest group order; 36 for abelian sweeps, 24 for random ones.
    #[arg(long)]
    pub max_order: Option<usize>,
}

pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    RunConfig::from_json(&text)
}

fn input_config(input: &Input) -> Result<RunConfig, CliError> {
    match (&input.config, &input.preset) {
        (Some(p), _) => load_config(p),
        (None, Some(name)) => surface_preset(name),
        (None, None) => Err(CliError::Validation("either --config or --preset is required".into())),
    }
}

fn sweep_config(args: &SweepArgs) -> Result<RunConfig, CliError> {
    if let Some(p) = &args.config {
        return load_config(p);
    }
    let sweep = match args.kind.unwrap_or(SweepKind::Abelian) {
        SweepKind::Abelian => SweepConfig::Abelian { max_order: args.max_order.unwrap_or(36) },
        SweepKind::Random => SweepConfig::random(args.count, args.seed, args.max_order.unwrap_or(24)),
        SweepKind::Presets => SweepConfig::Presets,
    };
    Ok(RunConfig {
        description: None,
        mode: Some(Mode::Sweep),
        format: None,
        group: None,
        sigma: Vec::new(),
        base_genus: 0,
        bad_fibers: None,
        branch_points: Default::default(),
        order_cap: None,
        sweep: Some(sweep),
    })
}

fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => report.to_json(),
        Format::Text => Ok(report.to_text()),
    }
}

/// Runs the parsed command and returns the rendered report with its exit
/// code.
pub fn run_cli(cli: &Cli) -> Result<(String, i32), CliError> {
    let opts = RunOptions { refined: cli.refined, cache_dir: cli.cache_dir.clone() };
    let (cfg, mode) = match &cli.command {
        Command::Presets => {
            let report = Report::Presets(list_presets()?);
            return Ok((render(&report, cli.format.unwrap_or(Format::Text))?, 0));
        }
        Command::Bounds(i) => (input_config(i)?, Mode::Bounds),
        Command::Epsilon(i) => (input_config(i)?, Mode::Epsilon),
        Command::Validate(i) => (input_config(i)?, Mode::Validate),
        Command::Run(i) => {
            let cfg = input_config(i)?;
            let mode = cfg.mode.unwrap_or(Mode::Bounds);
            (cfg, mode)
        }
        Command::Sweep(s) => (sweep_config(s)?, Mode::Sweep),
    };
    let format = cli.format.or(cfg.format).unwrap_or(Format::Text);
    let outcome = execute(&cfg, mode, &opts)?;
    Ok((render(&outcome.report, format)?, outcome.code))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Validation(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Validation(format!("cannot write report: {e}")))
        }
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = run_cli(&cli).and_then(|(text, code)| emit(&text, cli.out.as_deref()).map(|_| code));
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
