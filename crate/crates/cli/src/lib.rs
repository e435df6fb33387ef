//! Command-line front end: parses instance expressions, runs one command and renders the
//! result as JSON or text.

pub mod commands;
pub mod error;
pub mod grammar;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Context, Outcome};
pub use error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InstanceKind {
    PowerAffine,
    AffineLattice,
    DyadicSteps,
    Tower,
}

impl InstanceKind {
    pub fn from_name(name: &str) -> Option<Self> {
        <Self as ValueEnum>::from_str(name, false).ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "pq", version, about = "Pseudoquotients of Ore semigroup actions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum)]
    pub instance: Option<InstanceKind>,

    /// Word-length bound for `verify`.
    #[arg(long, global = true)]
    pub depth: Option<usize>,

    /// Presentation document for `verify`; level rules for `--instance tower` elsewhere.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the canonical value of `pq(<point>; <element>)`.
    Normalize { expr: String },
    /// Decide whether two pseudoquotients are equivalent.
    Equiv { left: String, right: String },
    /// Apply the extension of an element, or a `frac(den, num)`, to a pseudoquotient.
    Apply {
        operator: String,
        target: String,
        /// Apply the inverse bijection instead.
        #[arg(long)]
        inverse: bool,
    },
    /// Check injectivity, the Ore condition and cancellation up to `--depth`.
    ///
    /// Runs the preset of `--instance`, or the presentation given by `--config`.
    Verify {
        /// Dimension of the affine-lattice preset (1 or 2).
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
}

fn require_instance(cli: &Cli) -> Result<InstanceKind, CliError> {
    cli.instance
        .ok_or_else(|| CliError::Usage("--instance is required for this command".into()))
}

/// Runs one parsed invocation.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    if let Command::Verify { dim } = cli.command {
        let ctx = Context {
            tower: None,
            depth: cli.depth,
        };
        return match (&cli.config, cli.instance) {
            (Some(path), _) => commands::verify_config(&ctx, path),
            (None, Some(kind)) => commands::verify_preset(kind, &ctx, dim),
            (None, None) => Err(CliError::Usage(
                "verify needs --instance <preset> or --config <file.json>".into(),
            )),
        };
    }
    let kind = require_instance(cli)?;
    let tower = match (&cli.config, kind) {
        (Some(path), InstanceKind::Tower) => Some(commands::load_tower_config(path)?),
        (Some(_), _) => {
            return Err(CliError::Usage(
                "--config only applies to verify and to the tower instance".into(),
            ))
        }
        (None, _) => None,
    };
    let ctx = Context {
        tower,
        depth: cli.depth,
    };
    match &cli.command {
        Command::Normalize { expr } => commands::normalize(kind, &ctx, expr),
        Command::Equiv { left, right } => commands::equiv(kind, &ctx, left, right),
        Command::Apply {
            operator,
            target,
            inverse,
        } => commands::apply(kind, &ctx, operator, target, *inverse),
        Command::Verify { .. } => unreachable!("handled above"),
    }
}

/// Renders an outcome for stdout.
pub fn render(outcome: &Outcome, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(&outcome.json).expect("valid JSON"),
        OutputFormat::Text => outcome.text.clone(),
    }
}
