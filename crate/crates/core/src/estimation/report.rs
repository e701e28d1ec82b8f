use serde::{Deserialize, Serialize};

use super::fringe::EstimatorMode;
use crate::error::{Result, SyncError};
use crate::protocol::Protocol;

/// Against which time the adjustments are expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reference {
    /// Deviation from the average of all clocks.
    Average,
    /// Offset from party 0, the central clock.
    Central,
    /// Offset from an arbitrary standard clock.
    Party(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartyAdjustment {
    pub party: usize,
    pub estimate: f64,
    /// Closed-form prediction for this protocol at the round counts actually used.
    pub analytic_stderr: f64,
    /// Same propagation with the plug-in fringe errors instead of the ideal ones.
    pub estimated_stderr: f64,
    /// Filled in by the experiment harness, which knows the hidden offsets.
    pub truth: Option<f64>,
}

impl PartyAdjustment {
    pub fn error(&self) -> Option<f64> {
        self.truth.map(|t| self.estimate - t)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdjustmentReport {
    pub protocol: Protocol,
    pub n: usize,
    pub k: usize,
    pub qubits: usize,
    pub omega: f64,
    pub estimator: EstimatorMode,
    pub reference: Reference,
    /// Number of fringe inversions that hit the visibility boundary.
    pub clamped: usize,
    pub parties: Vec<PartyAdjustment>,
}

impl AdjustmentReport {
    pub fn estimates(&self) -> Vec<f64> {
        self.parties.iter().map(|p| p.estimate).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Attaches the true adjustments (same reference as the estimates).
    pub fn with_truth(mut self, truth: &[f64]) -> Self {
        for (p, &t) in self.parties.iter_mut().zip(truth) {
            p.truth = Some(t);
        }
        self
    }
}

/// Re-expresses every adjustment relative to `standard_party`: the standard
/// party's own adjustment is subtracted from everyone's. Stderr columns are
/// left as computed in the original convention.
pub fn recenter_to_standard_clock(report: &AdjustmentReport, standard_party: usize) -> Result<AdjustmentReport> {
    let standard = report
        .parties
        .iter()
        .find(|p| p.party == standard_party)
        .ok_or(SyncError::UnknownParty { party: standard_party, n: report.n })?;
    let (shift, truth_shift) = (standard.estimate, standard.truth);
    let mut out = report.clone();
    for p in &mut out.parties {
        p.estimate -= shift;
        if let (Some(t), Some(ts)) = (p.truth.as_mut(), truth_shift) {
            *t -= ts;
        }
    }
    out.reference = if standard_party == 0 { Reference::Central } else { Reference::Party(standard_party) };
    Ok(out)
}
