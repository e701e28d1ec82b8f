//! Command-line front end: `run`, `sweep` and `validate`.
//!
//! Exit codes: 0 success, 1 configuration error, 2 runtime error, 3 failed
//! sampler validation.

mod config_file;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

pub use config_file::{parse_config, parse_config_str, parse_sweep_config_str, ConfigFile, SweepConfig, KNOWN_KEYS};

use crate::error::{Result, SyncError};
use crate::experiments::{
    efficiency_sweep, format_validation, monte_carlo, run_trial_with_log, summary_json, validate_samplers,
    write_results_csv, write_sweep_csv, EfficiencyRow, TrialSummary, ValidationReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

pub const SUMMARY_JSON: &str = "summary.json";
pub const SUMMARY_TEXT: &str = "summary.txt";
pub const RESULTS_CSV: &str = "results.csv";
pub const SWEEP_CSV: &str = "sweep.csv";
pub const VALIDATION_TEXT: &str = "validation.txt";
pub const TRIAL_LOG: &str = "trial0.log";

#[derive(Debug, Parser)]
#[command(name = "qclocksync", version, about = "Multi-party quantum clock synchronization simulator")]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Debug, Subcommand)]
enum CommandArgs {
    /// Run a Monte Carlo experiment and write the summary and results table.
    Run {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare protocol accuracies at a fixed qubit budget.
    Sweep {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Cross-check the samplers against exact distributions.
    Validate {
        #[arg(long, value_name = "PATH")]
        config: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Output directory, created if missing.
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,
    /// Master seed, overriding the config file.
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,
    /// Omit the `# generated_unix=` header line and JSON field.
    #[arg(long)]
    no_timestamp: bool,
    /// Worker threads for trials (default: all cores).
    #[arg(long, value_name = "INT")]
    threads: Option<usize>,
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Run,
    Sweep,
    Validate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliInvocation {
    pub command: Command,
    pub config: Option<PathBuf>,
    pub out: PathBuf,
    pub seed: Option<u64>,
    pub timestamp: bool,
    pub threads: Option<usize>,
    pub verbosity: u8,
}

impl CliInvocation {
    /// Parses command-line arguments (including the program name).
    pub fn from_args<I, T>(args: I) -> std::result::Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args)?;
        let (command, config, common) = match cli.command {
            CommandArgs::Run { config, common } => (Command::Run, Some(config), common),
            CommandArgs::Sweep { config, common } => (Command::Sweep, Some(config), common),
            CommandArgs::Validate { config, common } => (Command::Validate, config, common),
        };
        Ok(CliInvocation {
            command,
            config,
            out: common.out,
            seed: common.seed,
            timestamp: !common.no_timestamp,
            threads: common.threads,
            verbosity: common.verbose,
        })
    }

    fn generated_unix(&self) -> Option<u64> {
        self.timestamp
            .then(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()))
    }

    fn config_file(&self) -> Result<(ConfigFile, &Path)> {
        let path = self
            .config
            .as_deref()
            .ok_or_else(|| SyncError::ConfigValue { key: "config".into(), reason: "--config is required".into() })?;
        Ok((ConfigFile::read(path)?, path))
    }
}

/// Entry point for the binary: parses `args`, dispatches, returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match CliInvocation::from_args(args) {
        Ok(inv) => dispatch(&inv),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}

pub fn dispatch(inv: &CliInvocation) -> i32 {
    match inv.command {
        Command::Run => cmd_run(inv),
        Command::Sweep => cmd_sweep(inv),
        Command::Validate => cmd_validate(inv),
    }
}

fn remediation(err: &SyncError) -> Option<&'static str> {
    match err {
        SyncError::Capacity { .. } => Some(
            "set `dicke_backend = auto` or `marginal` (or `ghz_backend = closed_form`), \
             or raise `statevector_limit` (at most 30) if memory allows",
        ),
        SyncError::EnumerationCap { .. } => Some("reduce `n`; full GHZ reconstruction is limited to small registers"),
        _ => None,
    }
}

fn report_error(context: &str, err: &SyncError) -> i32 {
    eprintln!("error: {context}: {err}");
    if let Some(hint) = remediation(err) {
        eprintln!("hint: {hint}");
    }
    if err.is_config_error() {
        EXIT_CONFIG
    } else {
        EXIT_RUNTIME
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match threads {
        None => f(),
        Some(0) => Err(SyncError::ConfigValue { key: "--threads".into(), reason: "must be positive".into() }),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| SyncError::Io(format!("thread pool: {e}")))?
            .install(f),
    }
}

fn prepare_out(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| SyncError::Io(format!("cannot create output directory {}: {e}", dir.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| SyncError::Io(format!("cannot write {}: {e}", path.display())))
}

pub fn format_summary(summary: &TrialSummary) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "protocol {}  N {}  k {}  qubits {}  trials {}  omega {}  estimator {:?}",
        summary.protocol, summary.n, summary.k, summary.qubits, summary.trials, summary.omega, summary.estimator
    );
    let _ = writeln!(s, "closed-form stderr per party: {:.6e}", summary.closed_form_stderr);
    let _ = writeln!(s, "{:<8}{:>15}{:>15}{:>10}", "party", "rms_error", "analytic", "ratio");
    for p in &summary.parties {
        let _ = writeln!(s, "{:<8}{:>15.6e}{:>15.6e}{:>10.4}", p.party, p.stats.rms_error, p.stats.analytic_stderr, p.stats.ratio);
    }
    let p = &summary.pooled;
    let _ = writeln!(s, "{:<8}{:>15.6e}{:>15.6e}{:>10.4}", "pooled", p.rms_error, p.analytic_stderr, p.ratio);
    let _ = writeln!(s, "clamped fringes: {}", summary.clamped);
    let _ = writeln!(s, "wall time: {:.3} s", summary.wall_time_secs);
    s
}

pub fn format_sweep(rows: &[EfficiencyRow]) -> String {
    let mut s = format!(
        "{:<8}{:>4}{:>10}{:>8}{:>16}{:>16}{:>9}\n",
        "protocol", "n", "q", "k", "empirical", "analytic", "ratio"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:<8}{:>4}{:>10}{:>8}{:>16.6e}{:>16.6e}{:>9.4}",
            r.protocol.name(),
            r.n,
            r.q,
            r.k,
            r.empirical_accuracy,
            r.analytic_accuracy,
            r.ratio
        );
    }
    s
}

pub fn cmd_run(inv: &CliInvocation) -> i32 {
    let loaded = inv.config_file().and_then(|(file, path)| {
        let config = file.experiment(inv.seed)?;
        Ok((config, file.write_log()?, path))
    });
    let (config, write_log, path) = match loaded {
        Ok(v) => v,
        Err(e) => return report_error(&inv.config.as_deref().unwrap_or(Path::new("-")).display().to_string(), &e),
    };
    if inv.verbosity > 0 {
        eprintln!("running {} trials of {} with N = {}, k = {}", config.trials, config.protocol, config.n, config.k);
    }
    let outcome = prepare_out(&inv.out).and_then(|()| {
        let summary = with_threads(inv.threads, || monte_carlo(&config))?;
        let stamp = inv.generated_unix();
        let mut csv = Vec::new();
        write_results_csv(&summary, stamp, &mut csv)?;
        write_file(&inv.out.join(RESULTS_CSV), &csv)?;
        write_file(&inv.out.join(SUMMARY_JSON), summary_json(&config, &summary, stamp)?.as_bytes())?;
        let text = format_summary(&summary);
        write_file(&inv.out.join(SUMMARY_TEXT), text.as_bytes())?;
        if write_log {
            let log = run_trial_with_log(&config, 0)?.log.expect("log requested");
            write_file(&inv.out.join(TRIAL_LOG), log.to_text().as_bytes())?;
        }
        Ok(text)
    });
    match outcome {
        Ok(text) => {
            print!("{text}");
            if inv.verbosity > 0 {
                eprintln!("wrote {}", inv.out.display());
            }
            EXIT_OK
        }
        Err(e) => report_error(&path.display().to_string(), &e),
    }
}

pub fn cmd_sweep(inv: &CliInvocation) -> i32 {
    let (sweep, path) = match inv.config_file().and_then(|(file, path)| Ok((file.sweep(inv.seed)?, path))) {
        Ok(v) => v,
        Err(e) => return report_error(&inv.config.as_deref().unwrap_or(Path::new("-")).display().to_string(), &e),
    };
    if inv.verbosity > 0 {
        eprintln!("sweeping N = {:?} at Q = {} for {} protocol(s)", sweep.n_list, sweep.q, sweep.protocols.len());
    }
    let outcome = prepare_out(&inv.out).and_then(|()| {
        let rows = with_threads(inv.threads, || efficiency_sweep(&sweep.base, &sweep.n_list, sweep.q, &sweep.protocols))?;
        let mut csv = Vec::new();
        write_sweep_csv(&rows, inv.generated_unix(), &mut csv)?;
        write_file(&inv.out.join(SWEEP_CSV), &csv)?;
        Ok(format_sweep(&rows))
    });
    match outcome {
        Ok(text) => {
            print!("{text}");
            EXIT_OK
        }
        Err(e) => report_error(&path.display().to_string(), &e),
    }
}

pub fn cmd_validate(inv: &CliInvocation) -> i32 {
    cmd_validate_with(inv, validate_samplers)
}

/// As [`cmd_validate`] with the validation suite supplied by the caller.
pub fn cmd_validate_with(inv: &CliInvocation, suite: impl FnOnce() -> Result<ValidationReport>) -> i32 {
    if let Some(path) = &inv.config {
        if let Err(e) = ConfigFile::read(path) {
            return report_error(&path.display().to_string(), &e);
        }
    }
    let outcome = prepare_out(&inv.out).and_then(|()| {
        let report = suite()?;
        let text = format_validation(&report);
        write_file(&inv.out.join(VALIDATION_TEXT), text.as_bytes())?;
        Ok((report, text))
    });
    match outcome {
        Ok((report, text)) => {
            print!("{text}");
            if report.all_passed() {
                EXIT_OK
            } else {
                let failing: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                eprintln!("error: sampler validation failed: {}", failing.join(", "));
                EXIT_VALIDATION
            }
        }
        Err(e) => report_error("validate", &e),
    }
}
