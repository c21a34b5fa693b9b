//! Command implementations behind the `perarfima` binary.
//!
//! Each `cmd_*` function takes a [`RunConfig`] and returns a [`Report`],
//! which renders itself as CSV or JSON. Exit codes: 0 on success, 2 for
//! usage and validation errors, 3 for numerical failures.

pub mod figures;
mod report;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use perarfima::acvf::{
    asymptotic_pacvf_fivar, asymptotic_pacvf_varfi, fivar_amplitudes, varfi_amplitudes,
    DEFAULT_EXACT_TRUNCATION,
};
use perarfima::{
    build_companion, exact_pacvf, ma_recursion, pi_total, replicate_pacvf, simulate,
    stationarity_roots, summarize, Centering, ExactOptions, ModelKind, PeriodicModelSpec,
    SimConfig, TailCorrection,
};

pub use figures::{FigureTarget, MatrixTarget};
pub use report::{CompanionReport, FigureSeries, MatricesReport, PacvfReport, Report};

pub const DEFAULT_JMAX: usize = 100;
pub const DEFAULT_TRUNCATION: usize = 10_000;
pub const DEFAULT_REPS: usize = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] perarfima::Error),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("malformed spec: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Simulate one sample path.
    Simulate,
    /// Empirical periodic autocovariances averaged over replications.
    Acvf,
    /// Exact and asymptotic periodic autocovariances.
    Theory,
    /// S-variate representation, determinantal roots and Phi(1)^{-1}.
    Companion,
    /// Amplitude grids of the two large-lag approximations.
    Matrices,
    /// Plot-ready data for the figure targets.
    Figures,
    /// Moving-average weights of the time-varying fractional filter.
    #[command(name = "appendix-ma")]
    AppendixMa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum CenteringArg {
    #[default]
    Mean,
    Zero,
}

impl From<CenteringArg> for Centering {
    fn from(c: CenteringArg) -> Self {
        match c {
            CenteringArg::Mean => Centering::SeasonalMean,
            CenteringArg::Zero => Centering::Zero,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum TailArg {
    None,
    #[default]
    Asymptotic,
}

impl From<TailArg> for TailCorrection {
    fn from(t: TailArg) -> Self {
        match t {
            TailArg::None => TailCorrection::None,
            TailArg::Asymptotic => TailCorrection::Asymptotic,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "perarfima",
    version,
    about = "Periodic ARFIMA autocovariances and simulation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Options {
    /// JSON model specification.
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Sample size.
    #[arg(long = "T", global = true, default_value_t = perarfima::simulate::DEFAULT_LENGTH)]
    pub length: usize,
    /// Largest lag (figure targets use their own range unless given).
    #[arg(long, global = true)]
    pub jmax: Option<usize>,
    /// Truncation of the fractional filters, in blocks [default: 10000 for
    /// simulation, 100000 for theoretical autocovariances].
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    #[arg(long, global = true, default_value_t = perarfima::simulate::DEFAULT_BURNIN)]
    pub burnin: usize,
    #[arg(long, global = true, default_value_t = perarfima::simulate::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_REPS)]
    pub reps: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// fig1..fig8, figB, figC, all (figures) or m41, m42 (matrices).
    #[arg(long, global = true)]
    pub target: Option<String>,
    /// Centering of sample autocovariances.
    #[arg(long, global = true, value_enum, default_value_t = CenteringArg::Mean)]
    pub centering: CenteringArg,
    /// Completion of the truncated sums in theoretical autocovariances.
    #[arg(long, global = true, value_enum, default_value_t = TailArg::Asymptotic)]
    pub tail: TailArg,
}

/// Fully resolved options for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub spec_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub length: usize,
    pub jmax: Option<usize>,
    /// Applies to both simulation and theory when set.
    pub truncation: Option<usize>,
    pub burnin: usize,
    pub seed: u64,
    pub replications: usize,
    pub format: Format,
    pub target: Option<String>,
    pub centering: Centering,
    pub tail: TailCorrection,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            spec_path: None,
            output_path: None,
            length: perarfima::simulate::DEFAULT_LENGTH,
            jmax: None,
            truncation: None,
            burnin: perarfima::simulate::DEFAULT_BURNIN,
            seed: perarfima::simulate::DEFAULT_SEED,
            replications: DEFAULT_REPS,
            format: Format::Csv,
            target: None,
            centering: Centering::SeasonalMean,
            tail: TailCorrection::Asymptotic,
        }
    }

    pub fn from_cli(cli: Cli) -> Self {
        let o = cli.options;
        RunConfig {
            command: cli.command,
            spec_path: o.spec,
            output_path: o.out,
            length: o.length,
            jmax: o.jmax,
            truncation: o.trunc,
            burnin: o.burnin,
            seed: o.seed,
            replications: o.reps,
            format: o.format,
            target: o.target,
            centering: o.centering.into(),
            tail: o.tail.into(),
        }
    }

    pub fn jmax_or_default(&self) -> usize {
        self.jmax.unwrap_or(DEFAULT_JMAX)
    }

    pub fn sim_config(&self) -> SimConfig {
        SimConfig {
            length: self.length,
            seed: self.seed,
            burnin: self.burnin,
            truncation: self.truncation.unwrap_or(DEFAULT_TRUNCATION),
        }
    }

    pub fn exact_options(&self) -> ExactOptions {
        ExactOptions {
            truncation: self.truncation.unwrap_or(DEFAULT_EXACT_TRUNCATION),
            tail: self.tail,
        }
    }
}

/// Reads and validates the model specification named by `--spec`.
pub fn load_spec(cfg: &RunConfig) -> CliResult<PeriodicModelSpec> {
    let path = cfg
        .spec_path
        .as_ref()
        .ok_or_else(|| CliError::Usage("--spec PATH is required".into()))?;
    let text = fs::read_to_string(path)?;
    parse_spec(&text)
}

pub fn parse_spec(text: &str) -> CliResult<PeriodicModelSpec> {
    if text.trim().is_empty() {
        return Err(CliError::Usage("spec file is empty".into()));
    }
    let mut spec: PeriodicModelSpec = serde_json::from_str(text)?;
    if spec.p == 0 && spec.phi.is_empty() {
        spec.phi = vec![Vec::new(); spec.seasons];
    }
    spec.validate()?;
    Ok(spec)
}

pub fn cmd_simulate(cfg: &RunConfig) -> CliResult<Report> {
    let spec = load_spec(cfg)?;
    Ok(Report::Series(simulate(&spec, &cfg.sim_config())?))
}

pub fn cmd_acvf(cfg: &RunConfig) -> CliResult<Report> {
    let spec = load_spec(cfg)?;
    let runs = replicate_pacvf(
        &spec,
        &cfg.sim_config(),
        cfg.replications,
        cfg.jmax_or_default(),
        cfg.centering,
    )?;
    let summary = summarize(&runs)?;
    Ok(Report::Pacvf(PacvfReport {
        grids: vec![summary.mean],
        std_error: Some(summary.std_error),
    }))
}

pub fn cmd_theory(cfg: &RunConfig) -> CliResult<Report> {
    let spec = load_spec(cfg)?;
    let jmax = cfg.jmax_or_default();
    let exact = exact_pacvf(&spec, jmax, &cfg.exact_options())?;
    let asymptotic = match spec.kind {
        ModelKind::ModelCVarfi => asymptotic_pacvf_varfi(&spec, jmax)?,
        _ => asymptotic_pacvf_fivar(&spec, jmax)?,
    };
    Ok(Report::Pacvf(PacvfReport {
        grids: vec![exact, asymptotic],
        std_error: None,
    }))
}

pub fn cmd_companion(cfg: &RunConfig) -> CliResult<Report> {
    let spec = load_spec(cfg)?;
    let companion = build_companion(&spec);
    let roots = stationarity_roots(&companion);
    let max_modulus = roots.first().copied().unwrap_or(0.0);
    // Pi is only meaningful for a stationary AR part
    let pi = spec.check_stationary().and_then(|c| pi_total(&c)).ok();
    Ok(Report::Companion(CompanionReport::new(
        &companion,
        roots,
        max_modulus,
        pi,
    )))
}

pub fn cmd_matrices(cfg: &RunConfig) -> CliResult<Report> {
    let (spec, target) = match cfg.target.as_deref() {
        Some(name) => {
            let target: MatrixTarget = name.parse().map_err(CliError::Usage)?;
            let spec = match &cfg.spec_path {
                Some(_) => load_spec(cfg)?,
                None => target.default_spec(),
            };
            (spec, Some(target))
        }
        None => (load_spec(cfg)?, None),
    };
    let fivar = fivar_amplitudes(&spec)?;
    let varfi = varfi_amplitudes(&spec)?;
    let report = MatricesReport::new(&spec, fivar, varfi);
    Ok(Report::Matrices(match target {
        Some(MatrixTarget::M41) => report.only_fivar(),
        Some(MatrixTarget::M42) => report.only_varfi(),
        None => report,
    }))
}

pub fn cmd_figures(cfg: &RunConfig) -> CliResult<Report> {
    let name = cfg
        .target
        .as_deref()
        .ok_or_else(|| CliError::Usage("--target is required for figures".into()))?;
    let targets = FigureTarget::parse_list(name).map_err(CliError::Usage)?;
    let base = match &cfg.spec_path {
        Some(_) => Some(load_spec(cfg)?),
        None => None,
    };
    let mut series = Vec::new();
    for target in targets {
        series.extend(figures::figure_series(target, base.as_ref(), cfg)?);
    }
    Ok(Report::Figures(series))
}

pub fn cmd_appendix_ma(cfg: &RunConfig) -> CliResult<Report> {
    let spec = load_spec(cfg)?;
    Ok(Report::Ma(ma_recursion(
        &spec.orders,
        cfg.jmax_or_default(),
    )?))
}

pub fn execute(cfg: &RunConfig) -> CliResult<Report> {
    match cfg.command {
        Command::Simulate => cmd_simulate(cfg),
        Command::Acvf => cmd_acvf(cfg),
        Command::Theory => cmd_theory(cfg),
        Command::Companion => cmd_companion(cfg),
        Command::Matrices => cmd_matrices(cfg),
        Command::Figures => cmd_figures(cfg),
        Command::AppendixMa => cmd_appendix_ma(cfg),
    }
}

/// Runs the command and writes its report to `--out` or standard output.
pub fn run(cfg: &RunConfig) -> CliResult<()> {
    let report = execute(cfg)?;
    match &cfg.output_path {
        Some(path) => {
            let mut file = io::BufWriter::new(fs::File::create(path)?);
            report.render(cfg.format, &mut file)?;
            file.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = io::BufWriter::new(stdout.lock());
            report.render(cfg.format, &mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}
