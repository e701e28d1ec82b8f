use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::trial::run_trial;
use crate::error::Result;
use crate::estimation::{analytic_adjustment_stderr, AdjustmentReport, EstimatorMode};
use crate::protocol::Protocol;

/// RMS of observed errors next to the matching RMS of predicted errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorSummary {
    pub rms_error: f64,
    pub analytic_stderr: f64,
    pub ratio: f64,
    pub samples: usize,
}

impl ErrorSummary {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let (mut se, mut sa, mut m) = (0.0, 0.0, 0usize);
        for (err, analytic) in pairs {
            se += err * err;
            sa += analytic * analytic;
            m += 1;
        }
        let rms_error = (se / m as f64).sqrt();
        let analytic_stderr = (sa / m as f64).sqrt();
        ErrorSummary { rms_error, analytic_stderr, ratio: rms_error / analytic_stderr, samples: m }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartySummary {
    pub party: usize,
    #[serde(flatten)]
    pub stats: ErrorSummary,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialSummary {
    pub protocol: Protocol,
    pub n: usize,
    pub k: usize,
    pub qubits: usize,
    pub trials: usize,
    pub omega: f64,
    pub estimator: EstimatorMode,
    /// Closed-form per-party error for this protocol at `k`.
    pub closed_form_stderr: f64,
    pub parties: Vec<PartySummary>,
    /// All scored parties and trials pooled; parties are exchangeable.
    pub pooled: ErrorSummary,
    pub clamped: usize,
    pub wall_time_secs: f64,
    #[serde(skip)]
    pub reports: Vec<AdjustmentReport>,
}

impl TrialSummary {
    /// Measured accuracy `1/(ω δt)²` from the pooled RMS error.
    pub fn empirical_accuracy(&self) -> f64 {
        1.0 / (self.omega * self.pooled.rms_error).powi(2)
    }
}

/// Parties whose error is scored: all of them for GHZ, all but the central clock otherwise.
pub fn scored_parties(protocol: Protocol, n: usize) -> std::ops::Range<usize> {
    match protocol {
        Protocol::Ghz => 0..n,
        Protocol::Pairs | Protocol::Dicke => 1..n,
    }
}

/// Runs every trial (in parallel, merged by trial index) and summarizes the errors.
pub fn monte_carlo(config: &ExperimentConfig) -> Result<TrialSummary> {
    config.validate()?;
    let start = Instant::now();
    let reports = (0..config.trials)
        .into_par_iter()
        .map(|t| run_trial(config, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(config, reports, start.elapsed().as_secs_f64()))
}

pub fn summarize(config: &ExperimentConfig, reports: Vec<AdjustmentReport>, wall_time_secs: f64) -> TrialSummary {
    let scored = scored_parties(config.protocol, config.n);
    let column = |party: usize| {
        reports.iter().map(move |r| {
            let p = &r.parties[party];
            (p.error().expect("harness attaches truth"), p.analytic_stderr)
        })
    };
    let parties = scored
        .clone()
        .map(|party| PartySummary { party, stats: ErrorSummary::from_pairs(column(party)) })
        .collect();
    let pooled = ErrorSummary::from_pairs(scored.flat_map(column));
    TrialSummary {
        protocol: config.protocol,
        n: config.n,
        k: config.k,
        qubits: config.protocol.qubits(config.n, config.k),
        trials: config.trials,
        omega: config.omega,
        estimator: config.estimator,
        closed_form_stderr: analytic_adjustment_stderr(config.protocol, config.n, config.omega, config.k),
        parties,
        pooled,
        clamped: reports.iter().map(|r| r.clamped).sum(),
        wall_time_secs,
        reports,
    }
}
