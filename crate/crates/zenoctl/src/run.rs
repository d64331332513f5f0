//! Running a resolved configuration.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use thiserror::Error;
use zeno_core::bae::{ancilla_states_closed_form, ancilla_states_numeric, h_total, overlap_re, u_free};
use zeno_core::engine::{
    curve_sweep, pointer_overlap, prob_innocent_closed_form, prob_innocent_with_interaction, transition_rate_analytic,
    transition_rate_numeric, zeno_sequence, ExperimentSpec, Interaction, Mode,
};
use zeno_core::qlin::{trace_distance, ComplexMatrix, HERMITIAN_TOL, NORM_TOL};

use crate::cli::parse_args;
use crate::config::{ConfigError, Experiment, InteractionKind, RunConfig, MAX_QUBITS_ENV};
use crate::output::{curve_csv, curve_plot_script, rate_csv, zeno_csv, zeno_plot_script, RateRow};

/// Step used for finite-difference rates.
pub const FD_STEP: f64 = 1e-5;
/// Agreement required between closed forms and direct evolution.
pub const AGREEMENT_TOL: f64 = 1e-10;
/// Agreement required between finite-difference and analytic rates.
pub const RATE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(#[from] ConfigError),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 1,
            RunError::Numerical(_) => 2,
        }
    }
}

impl From<zeno_core::Error> for RunError {
    fn from(e: zeno_core::Error) -> Self {
        RunError::Numerical(e.to_string())
    }
}

/// Result of a successful run: the text destined for stdout (empty when
/// written to a file) and whether every validation check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub passed: bool,
}

/// The engine specification for `config`.
pub fn experiment_spec(config: &RunConfig) -> Result<ExperimentSpec, RunError> {
    let interaction = match (&config.generator_override, config.interaction) {
        (Some(rows), _) => Interaction::Generator(ComplexMatrix::from_real_rows(rows)?),
        (None, InteractionKind::BeliefAction) => Interaction::BeliefAction,
        (None, InteractionKind::IdealDephasing) => Interaction::IdealDephasing,
    };
    let b_first = if config.experiment == Experiment::Zeno {
        0.0
    } else {
        config.b_first
    };
    let mut spec = ExperimentSpec::new(config.model, b_first, config.b_total)
        .with_interaction(interaction)
        .with_interactions(config.n_interactions, config.mode);
    spec.grid_points = config.grid_points;
    spec.max_qubits = config.max_qubits;
    Ok(spec)
}

/// Runs `config`. The output file, if any, is created before computing.
pub fn execute(config: &RunConfig) -> Result<Outcome, RunError> {
    let mut sink = match &config.output_path {
        Some(path) => Some(create(path, "output_path")?),
        None => None,
    };
    let script = match (&config.output_path, config.emit_plot_script) {
        (Some(path), true) => Some((create(&path.with_extension("py"), "emit_plot_script")?, path)),
        _ => None,
    };

    let spec = experiment_spec(config)?;
    let (text, passed) = match config.experiment {
        Experiment::Fig1 | Experiment::Fig2 | Experiment::Sweep => (curve_csv(&curve_sweep(&spec)?), true),
        Experiment::Zeno => (zeno_csv(&[zeno_sequence(&spec)?]), true),
        Experiment::Rate => (rate_csv(&rate_row(&spec)?), true),
        Experiment::Validate => {
            let checks = validation_checks(&spec);
            (report(&checks), checks.iter().all(|c| c.status != Status::Fail))
        }
    };

    if let Some((mut file, csv_path)) = script {
        let name = csv_path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let body = if config.experiment == Experiment::Zeno {
            zeno_plot_script(&name)
        } else {
            curve_plot_script(&name, config.experiment.as_str())
        };
        write_all(&mut file, &body, "emit_plot_script")?;
    }
    match &mut sink {
        Some(file) => {
            write_all(file, &text, "output_path")?;
            Ok(Outcome {
                stdout: String::new(),
                passed,
            })
        }
        None => Ok(Outcome { stdout: text, passed }),
    }
}

fn create(path: &Path, key: &str) -> Result<File, RunError> {
    File::create(path).map_err(|e| ConfigError::new(key, format!("cannot write {}: {e}", path.display())).into())
}

fn write_all(file: &mut File, text: &str, key: &str) -> Result<(), RunError> {
    file.write_all(text.as_bytes())
        .and_then(|_| file.flush())
        .map_err(|e| ConfigError::new(key, format!("write failed: {e}")).into())
}

fn rate_row(spec: &ExperimentSpec) -> Result<RateRow, RunError> {
    let overlap = match pointer_overlap(spec) {
        Ok(r) => Some(r),
        Err(zeno_core::Error::Precondition(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let analytic_overlap = if spec.n_interactions == 0 { Some(1.0) } else { overlap };
    let free = spec.clone().with_interactions(0, spec.mode);
    Ok(RateRow {
        b_first: spec.b_first.0,
        overlap,
        rate_analytic: analytic_overlap.map(|r| transition_rate_analytic(spec.b_first, r)),
        rate_numeric: transition_rate_numeric(spec, FD_STEP)?,
        rate_free: transition_rate_numeric(&free, FD_STEP)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn within(name: &'static str, value: Result<f64, RunError>, tol: f64) -> Self {
        match value {
            Ok(v) if v <= tol => Check {
                name,
                status: Status::Pass,
                detail: format!("{v:e} <= {tol:e}"),
            },
            Ok(v) => Check {
                name,
                status: Status::Fail,
                detail: format!("{v:e} > {tol:e}"),
            },
            Err(e) => Check {
                name,
                status: Status::Fail,
                detail: e.to_string(),
            },
        }
    }

    fn skip(name: &'static str, detail: &str) -> Self {
        Check {
            name,
            status: Status::Skip,
            detail: detail.to_string(),
        }
    }
}

/// Diagnostics at the parameters in `spec`.
pub fn validation_checks(spec: &ExperimentSpec) -> Vec<Check> {
    let p = &spec.params;
    let mut checks = Vec::new();

    let generator = match &spec.interaction {
        Interaction::BeliefAction => Some(h_total(p)),
        Interaction::Generator(h) => Some(h.clone()),
        Interaction::IdealDephasing => None,
    };
    checks.push(match generator {
        Some(h) => Check::within("generator_hermitian", Ok(h.hermiticity_defect()), HERMITIAN_TOL),
        None => Check::skip("generator_hermitian", "ideal dephasing has no generator"),
    });

    let unitary = spec.interaction.unitary(p).map_err(RunError::from);
    let defect = unitary
        .as_ref()
        .map_err(Clone::clone)
        .map(|u| u.unitarity_defect().max(u_free(spec.b_first).unitarity_defect()));
    checks.push(Check::within("unitarity", defect, NORM_TOL));

    checks.push(
        if matches!(spec.interaction, Interaction::BeliefAction) && p.gamma == 0.0 {
            let gap = || -> Result<f64, RunError> {
                let (nu, eta) = ancilla_states_closed_form(p)?;
                let (nu_n, eta_n) = ancilla_states_numeric(unitary.as_ref().map_err(Clone::clone)?)?;
                Ok(nu
                    .amplitudes()
                    .iter()
                    .zip(nu_n.amplitudes())
                    .chain(eta.amplitudes().iter().zip(eta_n.amplitudes()))
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max))
            };
            Check::within("pointer_closed_form", gap(), AGREEMENT_TOL)
        } else {
            Check::skip(
                "pointer_closed_form",
                "closed form needs the belief-action generator with gamma = 0",
            )
        },
    );

    let overlap = match &unitary {
        Err(e) => Some(Err(e.clone())),
        Ok(u) => match ancilla_states_numeric(u) {
            Ok((nu, eta)) => Some(overlap_re(&nu, &eta).map_err(RunError::from)),
            Err(zeno_core::Error::Precondition(_)) => None,
            Err(e) => Some(Err(e.into())),
        },
    };
    let single = spec.clone().with_interactions(1, spec.mode);
    match overlap {
        Some(Ok(r)) => {
            let (b1, b12) = (spec.b_first.0, spec.b_total.0 - spec.b_first.0);
            let direct = prob_innocent_with_interaction(&single)
                .map(|pi| (pi - prob_innocent_closed_form(b1, b12, r)).abs())
                .map_err(RunError::from);
            checks.push(Check::within("survival_closed_form", direct, AGREEMENT_TOL));
            let rate = transition_rate_numeric(&single, FD_STEP)
                .map(|v| (v - transition_rate_analytic(spec.b_first, r)).abs())
                .map_err(RunError::from);
            checks.push(Check::within("transition_rate", rate, RATE_TOL));
        }
        None => {
            let why = "the interaction moves belief populations";
            checks.push(Check::skip("survival_closed_form", why));
            checks.push(Check::skip("transition_rate", why));
        }
        Some(Err(e)) => {
            checks.push(Check::within("survival_closed_form", Err(e.clone()), AGREEMENT_TOL));
            checks.push(Check::within("transition_rate", Err(e), RATE_TOL));
        }
    }

    let pure = zeno_sequence(&spec.clone().with_interactions(spec.n_interactions, Mode::PureState));
    let chan = zeno_sequence(&spec.clone().with_interactions(spec.n_interactions, Mode::Channel));
    let (distance, norm) = match (pure, chan) {
        (Ok(a), Ok(b)) => {
            let d = trace_distance(&a.belief, &b.belief).map_err(RunError::from);
            let n = [&a.belief, &b.belief]
                .iter()
                .map(|rho| (rho.matrix().trace().re - 1.0).abs())
                .fold(0.0, f64::max);
            (d, Ok(n))
        }
        (Err(e), _) | (_, Err(e)) => (Err(RunError::from(e.clone())), Err(RunError::from(e))),
    };
    checks.push(Check::within("mode_equivalence", distance, AGREEMENT_TOL));
    checks.push(Check::within("normalization", norm, NORM_TOL));
    checks
}

pub fn report(checks: &[Check]) -> String {
    checks
        .iter()
        .map(|c| format!("{} {}: {}\n", c.status.as_str(), c.name, c.detail))
        .collect()
}

/// Full command-line entry point. Returns the process exit code.
pub fn run_cli<I, T>(args: I, max_qubits_env: Option<&str>, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match parse_args(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = cli
        .load_overrides()
        .and_then(|o| RunConfig::resolve(cli.experiment(), o, max_qubits_env))
        .map_err(RunError::from)
        .and_then(|config| execute(&config));
    match result {
        Ok(outcome) => {
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            if outcome.passed {
                0
            } else {
                let _ = writeln!(stderr, "zenoctl: validation failed");
                2
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "zenoctl: {e}");
            e.exit_code()
        }
    }
}

/// Reads [`MAX_QUBITS_ENV`] from the process environment.
pub fn max_qubits_from_env() -> Option<String> {
    std::env::var(MAX_QUBITS_ENV).ok()
}
