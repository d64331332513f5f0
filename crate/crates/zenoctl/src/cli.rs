//! Command-line parsing.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use zeno_core::engine::Mode;

use crate::config::{ConfigError, Experiment, InteractionKind, Overrides};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Fig1,
    Fig2,
    Sweep,
    Zeno,
    Rate,
    Validate,
}

impl From<Command> for Experiment {
    fn from(c: Command) -> Self {
        match c {
            Command::Fig1 => Experiment::Fig1,
            Command::Fig2 => Experiment::Fig2,
            Command::Sweep => Experiment::Sweep,
            Command::Zeno => Experiment::Zeno,
            Command::Rate => Experiment::Rate,
            Command::Validate => Experiment::Validate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    #[value(name = "pure_state")]
    PureState,
    Channel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InteractionArg {
    #[value(name = "belief_action")]
    BeliefAction,
    #[value(name = "ideal_dephasing")]
    IdealDephasing,
}

/// Belief-action Zeno experiments.
///
/// Values come from the experiment preset, then the `--config` JSON file,
/// then individual flags.
#[derive(Debug, Clone, Parser)]
#[command(name = "zenoctl", version)]
pub struct Cli {
    /// Experiment to run; overrides `experiment` in the config file.
    #[arg(value_enum)]
    pub command: Command,
    /// JSON config file.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Interaction duration.
    #[arg(long, allow_negative_numbers = true)]
    pub t_prime: Option<f64>,
    /// Belief rotation before the evaluation.
    #[arg(long, allow_negative_numbers = true)]
    pub b_first: Option<f64>,
    /// Total belief rotation.
    #[arg(long, allow_negative_numbers = true)]
    pub b_total: Option<f64>,
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Number of evaluations.
    #[arg(long = "n")]
    pub n: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, value_enum)]
    pub interaction: Option<InteractionArg>,
    /// Output CSV path; stdout when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Also write a matplotlib script next to the CSV.
    #[arg(long)]
    pub emit_plot_script: bool,
}

impl Cli {
    pub fn experiment(&self) -> Experiment {
        self.command.into()
    }

    /// Flag values as overrides on top of the config file.
    pub fn overrides(&self) -> Overrides {
        Overrides {
            experiment: Some(self.experiment()),
            mu0: self.mu0,
            mu1: self.mu1,
            gamma: self.gamma,
            t_prime: self.t_prime,
            b_first: self.b_first,
            b_total: self.b_total,
            grid_points: self.grid_points,
            n_interactions: self.n,
            mode: self.mode.map(|m| match m {
                ModeArg::PureState => Mode::PureState,
                ModeArg::Channel => Mode::Channel,
            }),
            interaction: self.interaction.map(|i| match i {
                InteractionArg::BeliefAction => InteractionKind::BeliefAction,
                InteractionArg::IdealDephasing => InteractionKind::IdealDephasing,
            }),
            generator_override: None,
            output_path: self.out.clone(),
            emit_plot_script: self.emit_plot_script.then_some(true),
        }
    }

    /// Reads the config file, if any, and layers the flags over it.
    pub fn load_overrides(&self) -> Result<Overrides, ConfigError> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| ConfigError::new("config", format!("cannot read {}: {e}", path.display())))?;
                Overrides::from_json(&text)?
            }
            None => Overrides::default(),
        };
        Ok(file.merge(self.overrides()))
    }
}

pub fn parse_args<I, T>(args: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(args)
}
