//! Command-line front end. `dispatch` parses arguments, runs one
//! subcommand and maps the outcome to an exit code: 0 success, 1 usage or
//! input error, 2 numerical failure.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bls::{Bls, BlsParams, Component, Pair};
use crate::datakit::{self, Candidate, Dataset};
use crate::error::{Error, Result};
use crate::estimation::{fit_mle, profile_fit, FitResult};
use crate::generators::{GeneratorId, GeneratorParams, GeneratorSpec};
use crate::montecarlo::{self, McConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "blslab",
    version,
    about = "Bivariate log-symmetric distributions: evaluation, sampling, fitting, simulation and diagnostics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
pub enum Command {
    /// Evaluate the density, log-density, joint CDF or marginal quantiles.
    Eval(EvalArgs),
    /// Draw a sample and write it as CSV.
    Sample(SampleArgs),
    /// Fit a model by maximum likelihood and write the result as JSON.
    Fit(FitArgs),
    /// Run a Monte Carlo study of the estimator and write bias/MSE tables.
    Simulate(SimulateArgs),
    /// Fit a model and write the Mahalanobis QQ data as TSV.
    Diagnose(DiagnoseArgs),
    /// Print descriptive statistics of a data file.
    Summary(SummaryArgs),
    /// Fit several families and rank them by AIC and BIC.
    Compare(CompareArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct ModelArgs {
    /// Generator family: lognormal, logt, logpvii, loghyperbolic, loglaplace, logslash, logpexp, loglogistic.
    #[arg(long)]
    pub model: GeneratorId,
    /// Degrees of freedom or shape ν (logt, loghyperbolic, logslash).
    #[arg(long)]
    pub nu: Option<f64>,
    /// Shape ξ (logpvii, logpexp).
    #[arg(long)]
    pub xi: Option<f64>,
    /// Generator parameter θ of logpvii (not the parameter vector).
    #[arg(long = "theta-gen")]
    pub theta_gen: Option<f64>,
}

impl ModelArgs {
    fn spec(&self) -> Result<GeneratorSpec> {
        GeneratorSpec::new(
            self.model,
            GeneratorParams {
                nu: self.nu,
                xi: self.xi,
                theta: self.theta_gen,
            },
        )
    }
}

#[derive(Debug, Args, Serialize)]
pub struct GridArgs {
    /// Profile ν over a grid a:b[:step] (step defaults to 1).
    #[arg(long = "nu-grid")]
    pub nu_grid: Option<Grid>,
    /// Profile ξ over a grid a:b[:step].
    #[arg(long = "xi-grid")]
    pub xi_grid: Option<Grid>,
    /// Profile the logpvii generator parameter θ over a grid a:b[:step].
    #[arg(long = "theta-gen-grid")]
    pub theta_gen_grid: Option<Grid>,
}

impl GridArgs {
    fn any(&self) -> bool {
        self.nu_grid.is_some() || self.xi_grid.is_some() || self.theta_gen_grid.is_some()
    }
}

#[derive(Debug, Args, Serialize)]
pub struct EvalArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Parameter vector η₁,η₂,σ₁,σ₂,ρ.
    #[arg(long)]
    pub theta: Theta,
    /// Joint density at t₁,t₂ (repeatable).
    #[arg(long)]
    pub pdf: Vec<Point>,
    /// Joint log-density at t₁,t₂ (repeatable).
    #[arg(long)]
    pub logpdf: Vec<Point>,
    /// Joint CDF at t₁,t₂ (repeatable).
    #[arg(long)]
    pub cdf: Vec<Point>,
    /// Marginal quantile of the chosen component at probability p (repeatable).
    #[arg(long)]
    pub quantile: Vec<f64>,
    /// Component (1 or 2) used by --quantile.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub component: u8,
}

#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Parameter vector η₁,η₂,σ₁,σ₂,ρ.
    #[arg(long)]
    pub theta: Theta,
    /// Number of pairs to draw.
    #[arg(long)]
    pub n: usize,
    /// Random seed.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct FitArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub grids: GridArgs,
    /// Input CSV with a header and two positive columns.
    #[arg(long)]
    pub data: PathBuf,
    /// Worker threads for profiling (fallback: BLSLAB_THREADS).
    #[arg(long, env = "BLSLAB_THREADS")]
    pub threads: Option<usize>,
    /// Output JSON path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// True η₁,η₂,σ₁,σ₂,ρ; ρ is replaced by each --rho value.
    #[arg(long, default_value = "1,1,0.5,0.5,0")]
    pub theta: Theta,
    /// Comma-separated sample sizes.
    #[arg(long, default_value = "25,50,100,150")]
    pub n: List<usize>,
    /// Comma-separated true correlations.
    #[arg(long, default_value = "0,0.25,0.5,0.75,0.95")]
    pub rho: List<f64>,
    /// Replications per (n, ρ) cell.
    #[arg(long, default_value_t = montecarlo::DEFAULT_REPLICATIONS)]
    pub reps: usize,
    /// Master seed.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads (fallback: BLSLAB_THREADS); results do not depend on it.
    #[arg(long, env = "BLSLAB_THREADS")]
    pub threads: Option<usize>,
    /// Output TSV path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the full report as JSON to this path.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct DiagnoseArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub grids: GridArgs,
    /// Input CSV with a header and two positive columns.
    #[arg(long)]
    pub data: PathBuf,
    /// Worker threads for profiling (fallback: BLSLAB_THREADS).
    #[arg(long, env = "BLSLAB_THREADS")]
    pub threads: Option<usize>,
    /// Output TSV path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SummaryArgs {
    /// Input CSV with a header and two positive columns.
    #[arg(long)]
    pub data: PathBuf,
    /// Output TSV path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CompareArgs {
    /// Input CSV with a header and two positive columns.
    #[arg(long)]
    pub data: PathBuf,
    /// Comma-separated families to compare (default: all eight).
    #[arg(long)]
    pub models: Option<List<GeneratorId>>,
    #[command(flatten)]
    pub grids: GridArgs,
    /// Worker threads (fallback: BLSLAB_THREADS); results do not depend on it.
    #[arg(long, env = "BLSLAB_THREADS")]
    pub threads: Option<usize>,
    /// Output TSV path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the comparison as JSON to this path.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

/// Comma-separated values.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct List<T>(pub Vec<T>);

impl<T: FromStr> FromStr for List<T>
where
    T::Err: fmt::Display,
{
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.split(',')
            .map(|v| v.trim().parse::<T>().map_err(|e| format!("'{v}': {e}")))
            .collect::<std::result::Result<Vec<T>, String>>()
            .map(List)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Theta(pub BlsParams);

impl FromStr for Theta {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let List(v) = s.parse::<List<f64>>()?;
        BlsParams::from_slice(&v).map(Theta).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Point(pub Pair);

impl FromStr for Point {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.parse::<List<f64>>()?.0[..] {
            [a, b] => Ok(Point([a, b])),
            _ => Err(format!("expected t1,t2, got '{s}'")),
        }
    }
}

/// Grid `a:b[:step]` or a single value.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Grid(pub Vec<f64>);

impl FromStr for Grid {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<f64> = s
            .split(':')
            .map(|v| v.trim().parse::<f64>().map_err(|e| format!("'{v}': {e}")))
            .collect::<std::result::Result<_, _>>()?;
        let (a, b, step) = match parts[..] {
            [a] => (a, a, 1.0),
            [a, b] => (a, b, 1.0),
            [a, b, step] => (a, b, step),
            _ => return Err(format!("expected a:b[:step], got '{s}'")),
        };
        if !(step > 0.0) || !(b >= a) || !a.is_finite() || !b.is_finite() {
            return Err(format!("empty or invalid grid '{s}'"));
        }
        let count = ((b - a) / step + 1e-9).floor() as usize + 1;
        if count > 100_000 {
            return Err(format!("grid '{s}' has more than 100000 points"));
        }
        // round away accumulated binary noise so 0.01 steps print cleanly
        Ok(Grid((0..count).map(|k| ((a + k as f64 * step) * 1e10).round() / 1e10).collect()))
    }
}

/// Provenance written next to every output file.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub argv: Vec<String>,
    /// Parsed flags, defaults included.
    pub flags: serde_json::Value,
    pub seed: Option<u64>,
    pub version: String,
    pub duration_secs: f64,
}

/// Path of the manifest accompanying `out`: `<out>.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Process exit code for an error: 1 for usage and input problems, 2 for numerical failures.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Domain(_) | Error::Parse { .. } | Error::Io(_) | Error::Csv(_) | Error::Json(_) => 1,
        Error::Integration { .. }
        | Error::RootFinding(_)
        | Error::ZeroProbability(_)
        | Error::Singular(_)
        | Error::SingularInformation
        | Error::Fit(_) => 2,
    }
}

/// Parse `argv` (including the program name), run, and return the exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    dispatch_to(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// As [`dispatch`], with explicit output streams.
pub fn dispatch_to<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let argv: Vec<String> = argv.iter().map(|s| s.to_string_lossy().into_owned()).collect();
    match run(&cli, &argv, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        b = b.num_threads(t.max(1));
    }
    b.build().map_err(|e| Error::Usage(format!("cannot start worker pool: {e}")))
}

/// Write `body` to `path` with its manifest, or to `out` when no path is given.
fn emit(
    body: &str,
    path: Option<&Path>,
    out: &mut dyn Write,
    cli: &Cli,
    argv: &[String],
    seed: Option<u64>,
    started: Instant,
) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, body)?;
            write_manifest(p, cli, argv, seed, started)
        }
        None => {
            out.write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn write_manifest(p: &Path, cli: &Cli, argv: &[String], seed: Option<u64>, started: Instant) -> Result<()> {
    let flags = serde_json::to_value(&cli.command)?;
    let subcommand = flags["subcommand"].as_str().unwrap_or_default().to_string();
    let m = RunManifest {
        subcommand,
        argv: argv.to_vec(),
        flags,
        seed,
        version: VERSION.to_string(),
        duration_secs: started.elapsed().as_secs_f64(),
    };
    std::fs::write(manifest_path(p), serde_json::to_string_pretty(&m)? + "\n")?;
    Ok(())
}

/// Shortest decimal of `v` rounded to 12 significant digits.
fn sig12(v: f64) -> String {
    if !v.is_finite() || v == 0.0 {
        return v.to_string();
    }
    let rounded: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    rounded.to_string()
}

/// Generator parameters to fit. Each parameter the family takes comes from
/// its grid flag, else its fixed flag, else the family's default grid.
fn fit_specs(model: &ModelArgs, grids: &GridArgs) -> Result<Vec<GeneratorParams>> {
    let f = model.model;
    let defaults = datakit::default_grid(f);
    let axis = |grid: &Option<Grid>, fixed: Option<f64>, get: fn(&GeneratorParams) -> Option<f64>| -> Vec<Option<f64>> {
        if let Some(Grid(g)) = grid {
            return g.iter().copied().map(Some).collect();
        }
        if fixed.is_some() {
            return vec![fixed];
        }
        let mut v: Vec<f64> = defaults.iter().filter_map(get).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        if v.is_empty() {
            vec![None]
        } else {
            v.into_iter().map(Some).collect()
        }
    };
    let nus = axis(&grids.nu_grid, model.nu, |p| p.nu);
    let xis = axis(&grids.xi_grid, model.xi, |p| p.xi);
    let ths = axis(&grids.theta_gen_grid, model.theta_gen, |p| p.theta);
    let mut out = Vec::new();
    for &nu in &nus {
        for &xi in &xis {
            for &theta in &ths {
                let p = GeneratorParams { nu, xi, theta };
                GeneratorSpec::new(f, p)?;
                out.push(p);
            }
        }
    }
    Ok(out)
}

fn fit_model(data: &[Pair], model: &ModelArgs, grids: &GridArgs) -> Result<FitResult> {
    let grid = fit_specs(model, grids)?;
    if grid.len() == 1 && !grids.any() {
        let fit = fit_mle(data, &GeneratorSpec::new(model.model, grid[0])?)?;
        if !fit.converged {
            return Err(Error::Fit(format!("did not converge: {}", fit.message)));
        }
        return Ok(fit);
    }
    Ok(profile_fit(data, model.model, &grid)?.fit)
}

fn run(cli: &Cli, argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let started = Instant::now();
    match &cli.command {
        Command::Eval(a) => {
            let bls = Bls::new(a.theta.0, a.model.spec()?)?;
            if a.pdf.is_empty() && a.logpdf.is_empty() && a.cdf.is_empty() && a.quantile.is_empty() {
                return Err(Error::Usage("nothing to evaluate: give --pdf, --logpdf, --cdf or --quantile".into()));
            }
            let pt = |p: &Point| format!("{},{}", p.0[0], p.0[1]);
            for p in &a.pdf {
                writeln!(out, "pdf\t{}\t{}", pt(p), sig12(bls.pdf(p.0)?))?;
            }
            for p in &a.logpdf {
                writeln!(out, "logpdf\t{}\t{}", pt(p), sig12(bls.ln_pdf(p.0)?))?;
            }
            for p in &a.cdf {
                writeln!(out, "cdf\t{}\t{}", pt(p), sig12(bls.cdf(p.0)?))?;
            }
            let c = if a.component == 1 { Component::First } else { Component::Second };
            for &p in &a.quantile {
                writeln!(out, "quantile{}\t{}\t{}", a.component, p, sig12(bls.marginal_quantile(c, p)?))?;
            }
            Ok(())
        }
        Command::Sample(a) => {
            let bls = Bls::new(a.theta.0, a.model.spec()?)?;
            let ds = Dataset::synthetic(bls.sample(a.n, a.seed)?)?;
            match &a.out {
                Some(p) => {
                    datakit::save_csv(&ds, p)?;
                    write_manifest(p, cli, argv, Some(a.seed), started)
                }
                None => {
                    let mut w = csv::Writer::from_writer(out);
                    w.write_record(&ds.labels)?;
                    for p in &ds.pairs {
                        w.write_record([p[0].to_string(), p[1].to_string()])?;
                    }
                    w.flush()?;
                    Ok(())
                }
            }
        }
        Command::Fit(a) => {
            let ds = datakit::load_csv(&a.data)?;
            let fit = pool(a.threads)?.install(|| fit_model(&ds.pairs, &a.model, &a.grids))?;
            let body = serde_json::to_string_pretty(&fit)? + "\n";
            emit(&body, a.out.as_deref(), out, cli, argv, None, started)
        }
        Command::Simulate(a) => {
            let config = McConfig {
                spec: a.model.spec()?,
                true_theta: a.theta.0,
                sample_sizes: a.n.0.clone(),
                rho_values: a.rho.0.clone(),
                replications: a.reps,
                master_seed: a.seed,
            };
            let report = montecarlo::run_study_with_threads(&config, a.threads)?;
            if let Some(j) = &a.json {
                std::fs::write(j, report.to_json()? + "\n")?;
                write_manifest(j, cli, argv, Some(a.seed), started)?;
            }
            for c in report.cells.iter().filter(|c| c.failure_alarm) {
                writeln!(
                    err,
                    "warning: {} of {} fits failed at n={}, rho={}",
                    c.failed, config.replications, c.n, c.rho
                )?;
            }
            emit(&report.to_tsv(), a.out.as_deref(), out, cli, argv, Some(a.seed), started)
        }
        Command::Diagnose(a) => {
            let ds = datakit::load_csv(&a.data)?;
            let fit = pool(a.threads)?.install(|| fit_model(&ds.pairs, &a.model, &a.grids))?;
            let qq = datakit::qq_mahalanobis(&ds, &fit)?;
            emit(&qq.to_tsv(), a.out.as_deref(), out, cli, argv, None, started)
        }
        Command::Summary(a) => {
            let ds = datakit::load_csv(&a.data)?;
            emit(&datakit::summarize(&ds).to_tsv(), a.out.as_deref(), out, cli, argv, None, started)
        }
        Command::Compare(a) => {
            let ds = datakit::load_csv(&a.data)?;
            let families = a.models.as_ref().map_or(GeneratorId::ALL.to_vec(), |m| m.0.clone());
            let candidates = families
                .into_iter()
                .map(|f| {
                    let relevant = GridArgs {
                        nu_grid: a.grids.nu_grid.clone().filter(|_| takes(f, "nu")),
                        xi_grid: a.grids.xi_grid.clone().filter(|_| takes(f, "xi")),
                        theta_gen_grid: a.grids.theta_gen_grid.clone().filter(|_| takes(f, "theta")),
                    };
                    if !relevant.any() {
                        return Ok(Candidate::new(f));
                    }
                    let model = ModelArgs {
                        model: f,
                        nu: None,
                        xi: None,
                        theta_gen: None,
                    };
                    Ok(Candidate::with_grid(f, fit_specs(&model, &relevant)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let cmp = pool(a.threads)?.install(|| datakit::compare_models(&ds, &candidates))?;
            for (f, why) in &cmp.failures {
                writeln!(err, "warning: {} failed: {why}", f.cli_name())?;
            }
            if cmp.rows.is_empty() {
                return Err(Error::Fit("every family failed".into()));
            }
            if let Some(j) = &a.json {
                std::fs::write(j, cmp.to_json()? + "\n")?;
                write_manifest(j, cli, argv, None, started)?;
            }
            emit(&cmp.to_tsv(), a.out.as_deref(), out, cli, argv, None, started)
        }
    }
}

/// Whether family `f` takes the extra parameter `name`.
fn takes(f: GeneratorId, name: &str) -> bool {
    use GeneratorId::*;
    matches!(
        (f, name),
        (LogStudentT | LogHyperbolic | LogSlash, "nu") | (LogPearsonVII | LogPowerExponential, "xi") | (LogPearsonVII, "theta")
    )
}

#[cfg(test)]
mod tests {
    use clap::CommandFactory;

    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("blslab").chain(args.iter().copied());
        let code = dispatch_to(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_lognormal_density_at_medians() {
        let (code, out, _) = run_capture(&["eval", "--model", "lognormal", "--theta", "1,1,1,1,0", "--pdf", "1,1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "pdf\t1,1\t0.159154943092\n");
    }

    #[test]
    fn eval_other_queries() {
        let (code, out, _) = run_capture(&[
            "eval", "--model", "logt", "--nu", "4", "--theta", "2,3,0.5,0.7,0.3", "--cdf", "2,3", "--quantile", "0.5",
            "--component", "2", "--logpdf", "2,3",
        ]);
        assert_eq!(code, 0, "{out}");
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[2].starts_with("quantile2\t0.5\t3"));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_capture(&["eval", "--model", "nosuch", "--theta", "1,1,1,1,0", "--pdf", "1,1"]).0, 1);
        assert_eq!(run_capture(&["eval", "--model", "lognormal", "--theta", "1,1,1,1", "--pdf", "1,1"]).0, 1);
        assert_eq!(run_capture(&["eval", "--model", "lognormal", "--theta", "1,1,1,1,0", "--bogus"]).0, 1);
        assert_eq!(run_capture(&["eval", "--model", "logt", "--theta", "1,1,1,1,0", "--pdf", "1,1"]).0, 1);
        assert_eq!(run_capture(&["frobnicate"]).0, 1);
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("simulate"));
    }

    #[test]
    fn every_flag_is_documented() {
        let cmd = Cli::command();
        for sub in cmd.get_subcommands() {
            assert!(sub.get_about().is_some(), "{} lacks a description", sub.get_name());
            let help = sub.clone().render_long_help().to_string();
            for arg in sub.get_arguments() {
                let id = arg.get_id().as_str();
                if id == "help" || id == "version" {
                    continue;
                }
                assert!(arg.get_help().is_some(), "{} --{id} has no help text", sub.get_name());
                let long = arg.get_long().expect("all options are long flags");
                assert!(help.contains(&format!("--{long}")), "{} help omits --{long}", sub.get_name());
            }
        }
    }

    #[test]
    fn grid_syntax() {
        assert_eq!("2:5".parse::<Grid>().unwrap().0, vec![2.0, 3.0, 4.0, 5.0]);
        assert_eq!("-0.5:1:0.01".parse::<Grid>().unwrap().0.len(), 151);
        assert_eq!("0:1:0.25".parse::<Grid>().unwrap().0, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!("7".parse::<Grid>().unwrap().0, vec![7.0]);
        assert!("5:2".parse::<Grid>().is_err());
        assert!("1:2:0".parse::<Grid>().is_err());
        assert!("a:b".parse::<Grid>().is_err());
    }

    #[test]
    fn fit_specs_defaults_and_products() {
        let m = |model, nu, xi, theta_gen| ModelArgs {
            model,
            nu,
            xi,
            theta_gen,
        };
        let none = GridArgs {
            nu_grid: None,
            xi_grid: None,
            theta_gen_grid: None,
        };
        assert_eq!(fit_specs(&m(GeneratorId::LogStudentT, None, None, None), &none).unwrap().len(), 14);
        assert_eq!(fit_specs(&m(GeneratorId::LogPearsonVII, None, None, None), &none).unwrap().len(), 25);
        assert_eq!(fit_specs(&m(GeneratorId::LogStudentT, Some(7.0), None, None), &none).unwrap().len(), 1);
        assert_eq!(fit_specs(&m(GeneratorId::LogNormal, None, None, None), &none).unwrap(), vec![GeneratorParams::none()]);
        let g = GridArgs {
            xi_grid: Some("3:5".parse().unwrap()),
            ..none
        };
        let specs = fit_specs(&m(GeneratorId::LogPearsonVII, None, None, Some(22.0)), &g).unwrap();
        assert_eq!(specs.len(), 3);
        assert!(specs.iter().all(|p| p.theta == Some(22.0)));
    }

    #[test]
    fn sig12_rounds() {
        assert_eq!(sig12(1.0 / std::f64::consts::TAU), "0.159154943092");
        assert_eq!(sig12(-2.5), "-2.5");
        assert_eq!(sig12(f64::INFINITY), "inf");
    }
}
