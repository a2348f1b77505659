//! The `oscihaz` command-line front end.
//!
//! Exit codes: 0 success, 1 input or validation error, 2 numerical or statistical failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::hazard::{is_admissible, Oscillator, OscillatorParams};
use crate::inference::{
    elicit_initial_conditions, fit_mle, linear_grid, predictive_curves, run_mcmc, FitOptions, FitResult, GammaPrior,
    InitialConditionSpec, InitialConditions, ModelKind, ModelSpec, PosteriorSummary, PriorSpec, SamplerConfig,
};
use crate::survdata::{kaplan_meier, load_csv, simulate, write_csv, write_km_csv, SurvivalDataset};

#[derive(Debug, Parser)]
#[command(name = "oscihaz", version, about = "Damped-oscillator hazard models for survival data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximum likelihood fit of one model.
    Fit(FitArgs),
    /// Posterior sampling for the oscillator model and predictive curves.
    Bayes(BayesArgs),
    /// BIC comparison across models.
    Compare(CompareArgs),
    /// Kaplan–Meier estimate.
    Km(KmArgs),
    /// Simulate survival times from an oscillator hazard.
    Simulate(SimulateArgs),
    /// Hazard, cumulative hazard and survival on a grid for given parameters.
    Curves(CurvesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Ho,
    Weibull,
    Pgw,
}

impl From<ModelArg> for ModelKind {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Ho => ModelKind::Ho,
            ModelArg::Weibull => ModelKind::Weibull,
            ModelArg::Pgw => ModelKind::Pgw,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SeedArg {
    #[arg(long, env = "OSCIHAZ_SEED", default_value_t = 1)]
    pub seed: u64,
}

/// Initial conditions, elicited from early survival unless given directly.
#[derive(Debug, Clone, Args)]
pub struct ElicitArgs {
    #[arg(long, default_value_t = 1.0 / 12.0)]
    pub dt: f64,
    #[arg(long, default_value_t = 1.0)]
    pub s0: f64,
    #[arg(long, default_value_t = 0.999)]
    pub s1: f64,
    #[arg(long, default_value_t = 0.998)]
    pub s2: f64,
    #[arg(long, requires = "r0", allow_hyphen_values = true)]
    pub h0: Option<f64>,
    #[arg(long, requires = "h0", allow_hyphen_values = true)]
    pub r0: Option<f64>,
}

impl ElicitArgs {
    fn resolve(&self) -> Result<InitialConditions, CliError> {
        if let (Some(h0), Some(r0)) = (self.h0, self.r0) {
            return Ok(InitialConditions { h0, r0 });
        }
        let spec = InitialConditionSpec {
            dt: self.dt,
            s0: self.s0,
            s1: self.s1,
            s2: self.s2,
        };
        Ok(elicit_initial_conditions(&spec)?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub model: ModelArg,
    #[arg(long, default_value_t = 10)]
    pub starts: usize,
    #[command(flatten)]
    pub seed: SeedArg,
    #[command(flatten)]
    pub elicit: ElicitArgs,
    /// Write JSON here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BayesArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub elicit: ElicitArgs,
    #[arg(long, default_value_t = 0.001)]
    pub prior_shape: f64,
    #[arg(long, default_value_t = 1000.0)]
    pub prior_scale: f64,
    #[arg(long, default_value_t = 20_000)]
    pub iters: usize,
    #[arg(long, default_value_t = 5_000)]
    pub burn_in: usize,
    #[arg(long, default_value_t = 5)]
    pub thin: usize,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, default_value_t = 15.0)]
    pub grid_max: f64,
    #[arg(long, default_value_t = 300)]
    pub grid_points: usize,
    #[arg(long, default_value_t = 0.025)]
    pub level_lo: f64,
    #[arg(long, default_value_t = 0.975)]
    pub level_hi: f64,
    #[arg(long)]
    pub draws_out: Option<PathBuf>,
    #[arg(long)]
    pub curves_out: Option<PathBuf>,
    /// Write the JSON summary here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "ho,weibull,pgw")]
    pub models: Vec<ModelArg>,
    #[arg(long, default_value_t = 10)]
    pub starts: usize,
    #[command(flatten)]
    pub seed: SeedArg,
    #[command(flatten)]
    pub elicit: ElicitArgs,
    /// Also write the comparison as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct KmArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OscillatorArgs {
    #[arg(long)]
    pub eta: f64,
    #[arg(long)]
    pub w0: f64,
    #[arg(long)]
    pub hb: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub h0: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub r0: f64,
}

impl OscillatorArgs {
    fn admissible_params(&self) -> Result<OscillatorParams<f64>, CliError> {
        let params = OscillatorParams::new(self.eta, self.w0, self.hb, self.h0, self.r0)?;
        let report = is_admissible(&params);
        if !report.admissible {
            let detail = serde_json::to_string(&report).expect("report serializes");
            return Err(CliError::numerical(format!("inadmissible parameters: {detail}")));
        }
        Ok(params)
    }
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub params: OscillatorArgs,
    #[arg(long)]
    pub n: usize,
    /// Rate of independent exponential censoring; 0 disables censoring.
    #[arg(long, default_value_t = 0.0)]
    pub censoring_rate: f64,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CurvesArgs {
    #[command(flatten)]
    pub params: OscillatorArgs,
    #[arg(long, default_value_t = 15.0)]
    pub grid_max: f64,
    #[arg(long, default_value_t = 300)]
    pub grid_points: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn numerical(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let numerical = matches!(
            e,
            Error::AllStartsFailed | Error::ChainStuck { .. } | Error::InadmissibleParams | Error::RootNotBracketed { .. }
        );
        Self {
            code: if numerical { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::input(format!("{}: {e}", path.display()))
}

fn read_dataset(path: &Path) -> Result<SurvivalDataset, CliError> {
    let file = File::open(path).map_err(|e| io_error(path, e))?;
    load_csv(file).map_err(|e| io_error(path, e))
}

fn with_sink(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> crate::Result<()>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(|e| io_error(p, e))?);
            f(&mut w).map_err(|e| io_error(p, e))?;
            w.flush().map_err(|e| io_error(p, e))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock).map_err(|e| CliError::input(format!("stdout: {e}")))
        }
    }
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), CliError> {
    with_sink(path, |w| {
        serde_json::to_writer_pretty(&mut *w, value).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(w)?;
        Ok(())
    })
}

fn model_spec(kind: ModelKind, elicit: &ElicitArgs) -> Result<ModelSpec, CliError> {
    Ok(match kind {
        ModelKind::Ho => ModelSpec::Ho(elicit.resolve()?),
        ModelKind::Weibull => ModelSpec::Weibull,
        ModelKind::Pgw => ModelSpec::Pgw,
    })
}

fn fit_options(starts: usize, seed: u64) -> Result<FitOptions, CliError> {
    if starts == 0 {
        return Err(CliError::input("--starts must be >= 1"));
    }
    Ok(FitOptions {
        starts,
        seed,
        ..Default::default()
    })
}

fn cmd_fit(args: &FitArgs) -> Result<(), CliError> {
    let data = read_dataset(&args.input)?;
    let spec = model_spec(args.model.into(), &args.elicit)?;
    let fit = fit_mle(&spec, &data, &fit_options(args.starts, args.seed.seed)?)?;
    write_json(args.output.as_deref(), &FitReport::new(args.model.into(), fit))
}

#[derive(Debug, Serialize)]
struct FitReport {
    model: ModelKind,
    #[serde(flatten)]
    fit: FitResult,
}

impl FitReport {
    fn new(model: ModelKind, fit: FitResult) -> Self {
        Self { model, fit }
    }
}

#[derive(Debug, Serialize)]
struct BayesReport {
    initial_conditions: InitialConditions,
    prior: PriorSpec,
    #[serde(flatten)]
    summary: PosteriorSummary,
}

fn cmd_bayes(args: &BayesArgs) -> Result<(), CliError> {
    let data = read_dataset(&args.input)?;
    let ic = args.elicit.resolve()?;
    if !(args.prior_shape > 0.0 && args.prior_scale > 0.0) {
        return Err(CliError::input("--prior-shape and --prior-scale must be > 0"));
    }
    let prior = PriorSpec::shared(GammaPrior::new(args.prior_shape, args.prior_scale));
    if !(args.grid_max > 0.0) || args.grid_points < 2 {
        return Err(CliError::input("--grid-max must be > 0 and --grid-points >= 2"));
    }
    let config = SamplerConfig {
        iters: args.iters,
        burn_in: args.burn_in,
        thin: args.thin,
        seed: args.seed.seed,
    };
    let draws = run_mcmc(&data, &prior, ic, &config)?;
    if let Some(path) = &args.draws_out {
        with_sink(Some(path), |w| draws.write_csv(w))?;
    }
    if let Some(path) = &args.curves_out {
        let grid = linear_grid(args.grid_max, args.grid_points);
        let curves = predictive_curves(&draws, ic, &grid, (args.level_lo, args.level_hi))?;
        with_sink(Some(path), |w| curves.write_csv(w))?;
    }
    let report = BayesReport {
        initial_conditions: ic,
        prior,
        summary: draws.summary(),
    };
    write_json(args.output.as_deref(), &report)
}

#[derive(Debug, Serialize)]
struct CompareRow {
    model: ModelKind,
    k: usize,
    loglik: f64,
    bic: f64,
    delta_bic: f64,
    fit: FitResult,
}

fn cmd_compare(args: &CompareArgs) -> Result<(), CliError> {
    let data = read_dataset(&args.input)?;
    let opts = fit_options(args.starts, args.seed.seed)?;
    let mut kinds: Vec<ModelKind> = Vec::new();
    for m in &args.models {
        let kind = ModelKind::from(*m);
        if !kinds.contains(&kind) {
            kinds.push(kind);
        }
    }
    let mut rows = Vec::with_capacity(kinds.len());
    for kind in kinds {
        let fit = fit_mle(&model_spec(kind, &args.elicit)?, &data, &opts)?;
        rows.push(CompareRow {
            model: kind,
            k: fit.k,
            loglik: fit.loglik,
            bic: fit.bic,
            delta_bic: 0.0,
            fit,
        });
    }
    rows.sort_by(|a, b| a.bic.total_cmp(&b.bic));
    let best = rows.first().map_or(0.0, |r| r.bic);
    for r in &mut rows {
        r.delta_bic = r.bic - best;
    }
    with_sink(None, |w| {
        writeln!(w, "{:<8} {:>2} {:>12} {:>12} {:>12}", "model", "k", "loglik", "bic", "delta_bic")?;
        for r in &rows {
            writeln!(
                w,
                "{:<8} {:>2} {:>12} {:>12} {:>12}",
                r.model.name(),
                r.k,
                sig6(r.loglik),
                sig6(r.bic),
                sig6(r.delta_bic)
            )?;
        }
        Ok(())
    })?;
    if let Some(path) = &args.json {
        write_json(Some(path), &rows)?;
    }
    Ok(())
}

/// Six significant digits, without exponent for ordinary magnitudes.
fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-4..=15).contains(&magnitude) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn cmd_km(args: &KmArgs) -> Result<(), CliError> {
    let data = read_dataset(&args.input)?;
    let curve = kaplan_meier(&data)?;
    with_sink(args.output.as_deref(), |w| write_km_csv(&curve, w))
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let params = args.params.admissible_params()?;
    let data = simulate(&params, args.n, args.censoring_rate, args.seed.seed)?;
    with_sink(args.output.as_deref(), |w| write_csv(&data, w))
}

fn cmd_curves(args: &CurvesArgs) -> Result<(), CliError> {
    let params = args.params.admissible_params()?;
    if !(args.grid_max > 0.0) || args.grid_points < 2 {
        return Err(CliError::input("--grid-max must be > 0 and --grid-points >= 2"));
    }
    let osc = Oscillator::new(params);
    with_sink(args.output.as_deref(), |w| {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["time", "hazard", "cumulative_hazard", "survival"])?;
        for t in linear_grid(args.grid_max, args.grid_points) {
            let cum = osc.cumulative_hazard(t);
            out.write_record([t, osc.hazard(t), cum, (-cum).exp()].map(|v| v.to_string()))?;
        }
        out.flush()?;
        Ok(())
    })
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Fit(a) => cmd_fit(a),
        Command::Bayes(a) => cmd_bayes(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Km(a) => cmd_km(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Curves(a) => cmd_curves(a),
    }
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("oscihaz: {}", e.message);
            e.code
        }
    }
}
