//! File formats written by experiment runs: the results table, the sweep table,
//! the validation listing and the summary document.

use std::io::Write;

use serde::Serialize;

use super::monte_carlo::{scored_parties, ErrorSummary, TrialSummary};
use super::sweep::EfficiencyRow;
use super::validate::ValidationReport;
use crate::error::Result;

pub const RESULTS_COLUMNS: [&str; 9] =
    ["kind", "trial", "party", "estimate", "truth", "error", "analytic_stderr", "rms_error", "ratio"];

pub const SWEEP_COLUMNS: [&str; 10] = [
    "protocol",
    "n",
    "q",
    "k",
    "trials",
    "rms_error",
    "empirical_accuracy",
    "analytic_accuracy",
    "ratio",
    "closed_form_stderr",
];

fn float(x: f64) -> String {
    format!("{x:.12e}")
}

fn timestamp_line<W: Write>(out: &mut W, generated_unix: Option<u64>) -> Result<()> {
    if let Some(t) = generated_unix {
        writeln!(out, "# generated_unix={t}")?;
    }
    Ok(())
}

fn summary_row(kind: &str, party: &str, s: &ErrorSummary) -> Vec<String> {
    vec![
        kind.into(),
        String::new(),
        party.into(),
        String::new(),
        String::new(),
        String::new(),
        float(s.analytic_stderr),
        float(s.rms_error),
        float(s.ratio),
    ]
}

/// One `trial` row per (trial, party), then one `summary` row per scored party and a
/// final `pooled` row. Floats use a fixed exponent format so equal inputs give
/// byte-identical files.
pub fn write_results_csv<W: Write>(summary: &TrialSummary, generated_unix: Option<u64>, mut out: W) -> Result<()> {
    timestamp_line(&mut out, generated_unix)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULTS_COLUMNS)?;
    for (trial, report) in summary.reports.iter().enumerate() {
        for p in &report.parties {
            let opt = |x: Option<f64>| x.map(float).unwrap_or_default();
            w.write_record([
                "trial".to_string(),
                trial.to_string(),
                p.party.to_string(),
                float(p.estimate),
                opt(p.truth),
                opt(p.error()),
                float(p.analytic_stderr),
                String::new(),
                String::new(),
            ])?;
        }
    }
    debug_assert!(summary.parties.iter().map(|p| p.party).eq(scored_parties(summary.protocol, summary.n)));
    for p in &summary.parties {
        w.write_record(summary_row("summary", &p.party.to_string(), &p.stats))?;
    }
    w.write_record(summary_row("pooled", "", &summary.pooled))?;
    w.flush()?;
    Ok(())
}

pub fn write_sweep_csv<W: Write>(rows: &[EfficiencyRow], generated_unix: Option<u64>, mut out: W) -> Result<()> {
    timestamp_line(&mut out, generated_unix)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_COLUMNS)?;
    for r in rows {
        w.write_record([
            r.protocol.name().to_string(),
            r.n.to_string(),
            r.q.to_string(),
            r.k.to_string(),
            r.trials.to_string(),
            float(r.rms_error),
            float(r.empirical_accuracy),
            float(r.analytic_accuracy),
            float(r.ratio),
            float(1.0 / r.analytic_accuracy.sqrt()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Plain-text table, one line per check.
pub fn format_validation(report: &ValidationReport) -> String {
    let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut text = String::new();
    for c in &report.checks {
        text.push_str(&format!(
            "{:<width$}  {}  max_dev={:.3e}  threshold={:.1e}\n",
            c.name,
            if c.passed { "PASS" } else { "FAIL" },
            c.max_deviation,
            c.threshold,
        ));
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    text.push_str(&format!("{passed}/{} checks passed\n", report.checks.len()));
    text
}

#[derive(Serialize)]
struct SummaryDocument<'a, C: Serialize> {
    format: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_unix: Option<u64>,
    config: &'a C,
    summary: &'a TrialSummary,
}

/// Pretty JSON holding the configuration and the run summary.
pub fn summary_json<C: Serialize>(config: &C, summary: &TrialSummary, generated_unix: Option<u64>) -> Result<String> {
    let doc = SummaryDocument { format: "qclocksync-summary-v1", generated_unix, config, summary };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}
