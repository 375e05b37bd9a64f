//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use weylscope_core::catalog::{self, ENTRY_NAMES};
use weylscope_core::conditions::{Condition, Tolerances, DEFAULT_BUDGET};
use weylscope_core::tensor::Orientation;

use crate::error::{AppError, AppResult};
use crate::identities::identity_suite;
use crate::report::{CatalogItem, CatalogReport, Format, RunInfo, SweepReport};
use crate::sweep::{default_workers, parallel_grid_sweep};
use crate::target::{catalog_source, resolve, sha256_hex};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Environment variable capping the number of grid points of one sweep.
pub const BUDGET_VAR: &str = "WEYLSCOPE_BUDGET";

pub const ANALYZE_GRID: usize = 5;
pub const VERIFY_GRID: usize = 3;

/// Conditions run by `verify` unless `--conditions` is given.
pub const VERIFY_CONDITIONS: [Condition; 4] =
    [Condition::Divergence, Condition::Weitzenbock, Condition::AlmostComplex, Condition::ParallelForm];

#[derive(Debug, Parser)]
#[command(
    name = "weylscope",
    version,
    about = "Self-dual Weyl curvature diagnostics for four-dimensional metric charts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep curvature conditions over a grid on the chart.
    Analyze(RunArgs),
    /// Check the differential identities of W+ and the algebraic identity sweeps.
    Verify(RunArgs),
    /// List the built-in metrics, or self-test one of them.
    Catalog(CatalogArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Catalog entry name or path to a metric-definition file.
    pub target: String,
    /// Grid points per axis (at least 2).
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<usize>,
    /// Relative tolerance of algebraic identities.
    #[arg(long, value_parser = parse_tolerance)]
    pub tol_algebraic: Option<f64>,
    /// Absolute tolerance of finite-difference quantities and grid verdicts.
    #[arg(long, value_parser = parse_tolerance)]
    pub tol_fd: Option<f64>,
    /// Chart orientation, +1 or -1.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_orientation)]
    pub orientation: Option<Orientation>,
    /// Comma-separated condition names.
    #[arg(long, value_delimiter = ',', value_parser = parse_condition)]
    pub conditions: Option<Vec<Condition>>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    /// Worker threads (at least 1); defaults to the available parallelism.
    #[arg(long, value_parser = parse_workers)]
    pub workers: Option<usize>,
    /// Seed of the random identity sweeps.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include the per-point array in JSON output.
    #[arg(long)]
    pub points: bool,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Entry to self-test; all entries are listed when omitted.
    pub name: Option<String>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_grid(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("`{s}` is not a grid size"))?;
    if n < 2 {
        return Err(format!("grid resolution must be at least 2, got {n}"));
    }
    Ok(n)
}

fn parse_workers(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("`{s}` is not a worker count"))?;
    if n == 0 {
        return Err("worker count must be at least 1".into());
    }
    Ok(n)
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!("`{s}` is not a non-negative tolerance")),
    }
}

fn parse_orientation(s: &str) -> Result<Orientation, String> {
    match s {
        "+1" | "1" => Ok(Orientation::Positive),
        "-1" => Ok(Orientation::Negative),
        _ => Err(format!("orientation must be +1 or -1, got `{s}`")),
    }
}

fn parse_condition(s: &str) -> Result<Condition, String> {
    Condition::from_name(s.trim()).ok_or_else(|| {
        let names: Vec<&str> = Condition::ALL.iter().map(|c| c.name()).collect();
        format!("unknown condition `{s}`; known: {}", names.join(", "))
    })
}

/// Validated settings of one `analyze` or `verify` run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub target: String,
    pub resolution: usize,
    pub tolerances: Tolerances,
    pub orientation: Option<Orientation>,
    pub conditions: Vec<Condition>,
    pub format: Format,
    pub workers: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub include_points: bool,
    pub budget: usize,
}

impl RunConfig {
    pub fn from_args(args: RunArgs, default_grid: usize, default_conditions: &[Condition]) -> AppResult<Self> {
        let defaults = Tolerances::default();
        let mut conditions = args.conditions.unwrap_or_else(|| default_conditions.to_vec());
        let mut seen = Vec::new();
        conditions.retain(|c| {
            let fresh = !seen.contains(c);
            seen.push(*c);
            fresh
        });
        Ok(Self {
            target: args.target,
            resolution: args.grid.unwrap_or(default_grid),
            tolerances: Tolerances {
                algebraic: args.tol_algebraic.unwrap_or(defaults.algebraic),
                fd: args.tol_fd.unwrap_or(defaults.fd),
            },
            orientation: args.orientation,
            conditions,
            format: args.format.into(),
            workers: args.workers.unwrap_or_else(default_workers),
            seed: args.seed,
            out: args.out,
            include_points: args.points,
            budget: budget_from_env()?,
        })
    }
}

pub fn budget_from_env() -> AppResult<usize> {
    match std::env::var(BUDGET_VAR) {
        Err(_) => Ok(DEFAULT_BUDGET),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| AppError::Usage(format!("{BUDGET_VAR} must be a positive integer, got `{v}`"))),
    }
}

fn sweep_report(cfg: &RunConfig, verify: bool) -> AppResult<SweepReport> {
    let target = resolve(&cfg.target)?;
    let mut target = target;
    if let Some(o) = cfg.orientation {
        target.patch = target.patch.with_orientation(o);
    }
    let report =
        parallel_grid_sweep(&target.patch, cfg.resolution, &cfg.conditions, &cfg.tolerances, cfg.budget, cfg.workers)?;
    let run = RunInfo { seed: cfg.seed, include_points: cfg.include_points };
    if !verify {
        return Ok(SweepReport::analyze(&target, &report, run));
    }
    let identities = identity_suite(cfg.seed, cfg.tolerances.algebraic)?;
    let einstein = target.entry.as_ref().map(|e| e.truth.is_einstein());
    Ok(SweepReport::verify(&target, &report, &identities, einstein, run))
}

pub fn cmd_analyze(cfg: &RunConfig) -> AppResult<(String, bool)> {
    let r = sweep_report(cfg, false)?;
    Ok((r.render(cfg.format), r.passed()))
}

pub fn cmd_verify(cfg: &RunConfig) -> AppResult<(String, bool)> {
    let r = sweep_report(cfg, true)?;
    Ok((r.render(cfg.format), r.passed()))
}

pub fn cmd_catalog(name: Option<&str>, format: Format) -> AppResult<(String, bool)> {
    let hash = |n: &str| sha256_hex(catalog_source(n).unwrap_or_default());
    let items = match name {
        None => catalog::entries()?.iter().map(|e| CatalogItem::new(e, hash(e.name), None)).collect(),
        Some(n) => {
            let e = catalog::entry(n)?;
            let status = match e.self_test() {
                Ok(()) => "pass".to_string(),
                Err(err) => format!("fail: {err}"),
            };
            vec![CatalogItem::new(&e, hash(e.name), Some(status))]
        }
    };
    let r = CatalogReport::new(items);
    Ok((r.render(format), r.passed()))
}

fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> AppResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| AppError::Io { path: path.clone(), source }),
        None => {
            stdout.write_all(text.as_bytes()).map_err(|source| AppError::Io { path: PathBuf::from("<stdout>"), source })
        }
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> AppResult<bool> {
    let (text, ok, out) = match cli.command {
        Command::Analyze(args) => {
            let cfg = RunConfig::from_args(args, ANALYZE_GRID, &Condition::POINTWISE)?;
            let (t, ok) = cmd_analyze(&cfg)?;
            (t, ok, cfg.out)
        }
        Command::Verify(args) => {
            let cfg = RunConfig::from_args(args, VERIFY_GRID, &VERIFY_CONDITIONS)?;
            let (t, ok) = cmd_verify(&cfg)?;
            (t, ok, cfg.out)
        }
        Command::Catalog(args) => {
            if let Some(n) = &args.name {
                if !ENTRY_NAMES.contains(&n.as_str()) {
                    return Err(AppError::Usage(format!(
                        "unknown catalog entry `{n}`; known: {}",
                        ENTRY_NAMES.join(", ")
                    )));
                }
            }
            let (t, ok) = cmd_catalog(args.name.as_deref(), args.format.into())?;
            (t, ok, args.out)
        }
    };
    emit(&text, out.as_ref(), stdout)?;
    Ok(ok)
}

/// Runs the command line `args` (program name first) and returns the exit
/// code: 0 when every selected check passes, 1 when some fail, 2 on usage or
/// runtime errors.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}
