//! Command-line driver: `surface`, `trajectory`, `verify` and `models`.
//!
//! Exit codes: 0 success, 1 validation error, 2 numerical failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::capacity::{capacity_surface, SurfaceRow, OptimizerOptions};
use crate::dynamics::{trajectory, IntegratorConfig};
use crate::model_io::{builtin_model, parse_config, write_table, ResultTable, BUILTIN_MODELS};
use crate::optimize::mix_seed;
use crate::verify::{run_checks, Level, VerifyOptions};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

pub const SURFACE_COLUMNS: [&str; 6] = ["eta", "s", "c1", "q1", "fidelity", "entropy"];
pub const TRAJECTORY_COLUMNS: [&str; 8] = ["t", "eta", "s", "c1", "q1", "fidelity", "entropy", "degenerate_flag"];

const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Debug, Parser)]
#[command(name = "noisecap", version, about = "Capacities of noisy qubit-network channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate C1, Q1, F(R) and S(R) over an (eta, s) grid.
    Surface(SurfaceArgs),
    /// Evolve a network and tabulate the induced channel over time.
    Trajectory(TrajectoryArgs),
    /// Run the consistency checks.
    Verify(VerifyArgs),
    /// List the bundled network models.
    Models(ModelsArgs),
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    #[arg(long, default_value_t = 21)]
    pub eta_steps: usize,
    #[arg(long, default_value_t = 21)]
    pub s_steps: usize,
    /// Output CSV; `-` writes to stdout.
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub allow_unconverged: bool,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["model", "config"]))]
pub struct TrajectoryArgs {
    /// Bundled model name (see `noisecap models`).
    #[arg(long)]
    pub model: Option<String>,
    /// Path to a TOML network config.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Overrides `sweep.t_max`.
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Overrides `sweep.t_steps`.
    #[arg(long)]
    pub t_steps: Option<usize>,
    /// Multiplies every dephasing rate; overrides `sweep.dephasing_scale`.
    #[arg(long)]
    pub dephasing_scale: Option<f64>,
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub allow_unconverged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Fast,
    Full,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
    pub level: LevelArg,
    #[arg(long, hide = true)]
    pub corrupt_kraus: bool,
}

#[derive(Debug, Args)]
pub struct ModelsArgs {
    #[arg(long)]
    pub json: bool,
}

fn exit_code(err: &Error) -> i32 {
    if err.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_VALIDATION
    }
}

fn linspace(steps: usize) -> Vec<f64> {
    (0..steps).map(|i| i as f64 / (steps - 1) as f64).collect()
}

fn emit(table: &ResultTable, out: &Path, stdout: &mut dyn Write) -> Result<()> {
    if out.as_os_str() == "-" {
        write_table(table, stdout)
    } else {
        write_table(table, BufWriter::new(File::create(out)?))
    }
}

pub fn surface_table(args: &SurfaceArgs) -> Result<(ResultTable, usize)> {
    if args.eta_steps < 2 || args.s_steps < 2 {
        return Err(Error::InvalidInput("--eta-steps and --s-steps must be at least 2".into()));
    }
    let opts = OptimizerOptions { seed: args.seed, ..Default::default() };
    let rows = capacity_surface(&linspace(args.eta_steps), &linspace(args.s_steps), &opts)?;
    let mut table = ResultTable::new(SURFACE_COLUMNS);
    for r in &rows {
        table.push(vec![r.eta, r.s, r.c1, r.q1, r.fidelity, r.entropy])?;
    }
    Ok((table, rows.iter().filter(|r| !r.converged()).count()))
}

fn cmd_surface(args: &SurfaceArgs, stdout: &mut dyn Write) -> Result<()> {
    let (table, unconverged) = surface_table(args)?;
    if unconverged > 0 && !args.allow_unconverged {
        return Err(Error::NotConverged(format!(
            "{unconverged} surface cells did not converge (pass --allow-unconverged to write anyway)"
        )));
    }
    emit(&table, &args.out, stdout)
}

pub fn trajectory_table(args: &TrajectoryArgs) -> Result<(ResultTable, usize)> {
    let doc = match (&args.model, &args.config) {
        (Some(name), None) => builtin_model(name)?.to_string(),
        (None, Some(path)) => std::fs::read_to_string(path)?,
        _ => return Err(Error::InvalidInput("give exactly one of --model and --config".into())),
    };
    let config = parse_config(&doc)?;
    let mut sweep = config.sweep;
    if let Some(t) = args.t_max {
        sweep.t_max = t;
    }
    if let Some(n) = args.t_steps {
        sweep.t_steps = n;
    }
    if let Some(scale) = args.dephasing_scale {
        sweep.dephasing_scale = scale;
    }
    if !(sweep.t_max >= 0.0 && sweep.t_max.is_finite()) || sweep.t_steps == 0 {
        return Err(Error::InvalidInput("--t-max must be nonnegative and --t-steps positive".into()));
    }
    if !(sweep.dephasing_scale >= 0.0 && sweep.dephasing_scale.is_finite()) {
        return Err(Error::InvalidInput("--dephasing-scale must be nonnegative".into()));
    }

    let mut spec = config.spec;
    spec.scale_dephasing(sweep.dephasing_scale);
    // the configured step is an upper bound; stronger dephasing may need less
    let auto = IntegratorConfig::for_spec(&spec, sweep.t_max);
    let integrator = IntegratorConfig {
        dt: config.integrator.dt.min(auto.dt),
        t_max: sweep.t_max,
        richardson_tolerance: config.integrator.richardson_tolerance,
    };

    let samples = trajectory(&spec, &integrator, &sweep.grid())?;
    let base = OptimizerOptions { seed: args.seed, ..Default::default() };
    let rows: Vec<(f64, bool, SurfaceRow)> = samples
        .par_iter()
        .enumerate()
        .map(|(i, sample)| {
            let opts = base.with_seed(mix_seed(base.seed, i as u64));
            SurfaceRow::compute(sample.params, &opts).map(|row| (sample.t, sample.degenerate, row))
        })
        .collect::<Result<_>>()?;

    let mut table = ResultTable::new(TRAJECTORY_COLUMNS);
    for (t, degenerate, r) in &rows {
        table.push(vec![*t, r.eta, r.s, r.c1, r.q1, r.fidelity, r.entropy, f64::from(u8::from(*degenerate))])?;
    }
    Ok((table, rows.iter().filter(|(_, _, r)| !r.converged()).count()))
}

fn cmd_trajectory(args: &TrajectoryArgs, stdout: &mut dyn Write) -> Result<()> {
    let (table, unconverged) = trajectory_table(args)?;
    if unconverged > 0 && !args.allow_unconverged {
        return Err(Error::NotConverged(format!(
            "{unconverged} time points did not converge (pass --allow-unconverged to write anyway)"
        )));
    }
    emit(&table, &args.out, stdout)
}

fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<bool> {
    let level = match args.level {
        LevelArg::Fast => Level::Fast,
        LevelArg::Full => Level::Full,
    };
    let checks = run_checks(VerifyOptions { level, corrupt_kraus: args.corrupt_kraus });
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        writeln!(stdout, "{status} {:<32} {:>7.2}s  {}", c.name, c.seconds, c.detail)?;
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    writeln!(stdout, "{} checks, {} failed", checks.len(), failed)?;
    Ok(failed == 0)
}

#[derive(Serialize)]
struct ModelEntry {
    name: &'static str,
    description: &'static str,
}

fn cmd_models(args: &ModelsArgs, stdout: &mut dyn Write) -> Result<()> {
    if args.json {
        let entries: Vec<ModelEntry> = BUILTIN_MODELS
            .iter()
            .map(|&(name, description)| ModelEntry { name, description })
            .collect();
        let text = serde_json::to_string_pretty(&entries).map_err(|e| Error::InvalidInput(e.to_string()))?;
        writeln!(stdout, "{text}")?;
    } else {
        for (name, description) in BUILTIN_MODELS {
            writeln!(stdout, "{name:<10} {description}")?;
        }
    }
    Ok(())
}

/// Executes a parsed invocation and returns the process exit code.
pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Surface(args) => cmd_surface(args, stdout),
        Command::Trajectory(args) => cmd_trajectory(args, stdout),
        Command::Models(args) => cmd_models(args, stdout),
        Command::Verify(args) => match cmd_verify(args, stdout) {
            Ok(true) => Ok(()),
            Ok(false) => return EXIT_NUMERICAL,
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, &mut io::stdout().lock(), &mut io::stderr().lock()),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            }
        }
    }
}
