//! Monte Carlo harness: trials, error summaries, qubit-budget sweeps and sampler validation.

mod config;
mod monte_carlo;
mod output;
mod sweep;
mod trial;
mod validate;

pub use config::{ExperimentConfig, OffsetSpec, DEFAULT_SPREAD, MAX_FULL_COVERAGE_N};
pub use monte_carlo::{monte_carlo, scored_parties, summarize, ErrorSummary, PartySummary, TrialSummary};
pub use output::{
    format_validation, summary_json, write_results_csv, write_sweep_csv, RESULTS_COLUMNS, SWEEP_COLUMNS,
};
pub use sweep::{efficiency_sweep, large_n_fringe_scaling, EfficiencyRow};
pub use trial::{run_trial, run_trial_with_log, trial_ensemble, TrialOutcome};
pub use validate::{validate_samplers, validate_samplers_with, ValidationCheck, ValidationReport};
