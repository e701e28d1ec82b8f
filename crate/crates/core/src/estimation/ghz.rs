use super::accumulator::{CellKey, FringeAccumulator};
use super::fringe::{estimate_fringe, invert_phase, two_quadrature_penalty, EstimatorMode};
use super::report::{AdjustmentReport, PartyAdjustment, Reference};
use crate::error::{Result, SyncError};
use crate::protocol::{binomial, DistributionSequence, Protocol, Quadrature};

/// Recovered signed time difference `T_j` for one distribution sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeDifferenceEstimate {
    pub sequence: usize,
    pub t_hat: f64,
    pub stderr: f64,
    pub count: u64,
    pub clamped: bool,
}

impl TimeDifferenceEstimate {
    /// A noiseless value, for feeding known differences through the reconstruction.
    pub fn exact(sequence: usize, t_hat: f64) -> Self {
        TimeDifferenceEstimate { sequence, t_hat, stderr: 0.0, count: 0, clamped: false }
    }
}

/// Fringe inversion for every sequence of the GHZ protocol (visibility 1).
pub fn estimate_time_differences(
    acc: &FringeAccumulator,
    num_sequences: usize,
    omega: f64,
    mode: EstimatorMode,
) -> Result<Vec<TimeDifferenceEstimate>> {
    (0..num_sequences)
        .map(|j| {
            let sine = estimate_fringe(acc, &CellKey::Sequence { index: j, quadrature: Quadrature::Sine })
                .map_err(|_| SyncError::Coverage(format!("sequence {j} has no sine-quadrature rounds")))?;
            let cosine = match mode {
                EstimatorMode::Linearized => None,
                EstimatorMode::TwoQuadrature => Some(
                    estimate_fringe(acc, &CellKey::Sequence { index: j, quadrature: Quadrature::Cosine })
                        .map_err(|_| SyncError::Coverage(format!("sequence {j} has no cosine-quadrature rounds")))?,
                ),
            };
            let p = invert_phase(cosine.as_ref(), Some(&sine), 1.0, omega, mode)?;
            Ok(TimeDifferenceEstimate { sequence: j, t_hat: p.value, stderr: p.stderr, count: p.count, clamped: p.clamped })
        })
        .collect()
}

/// Lays the estimates out by sequence index, failing if any sequence is absent.
fn by_sequence(estimates: &[TimeDifferenceEstimate], num_sequences: usize) -> Result<Vec<&TimeDifferenceEstimate>> {
    let mut slots: Vec<Option<&TimeDifferenceEstimate>> = vec![None; num_sequences];
    for e in estimates {
        if e.sequence >= num_sequences {
            return Err(SyncError::Coverage(format!("estimate for unknown sequence {}", e.sequence)));
        }
        slots[e.sequence] = Some(e);
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(j, s)| s.ok_or_else(|| SyncError::Coverage(format!("no estimate for sequence {j}"))))
        .collect()
}

/// `Σ_j (-1)^{f_i(j)} T_j`, which equals `C(N, N/2) (t_i − ⟨t⟩_{k≠i})`.
pub fn sequence_contrast(
    estimates: &[TimeDifferenceEstimate],
    sequences: &[DistributionSequence],
    party: usize,
) -> Result<f64> {
    let n = sequences.first().map_or(0, |s| s.len());
    if party >= n {
        return Err(SyncError::UnknownParty { party, n });
    }
    let ordered = by_sequence(estimates, sequences.len())?;
    Ok(sequences.iter().zip(ordered).map(|(s, e)| s.sign(party) * e.t_hat).sum())
}

fn reconstruction_weight(n: usize) -> f64 {
    let c = binomial(n as u64, n as u64 / 2).expect("sequence count fits") as f64;
    (n as f64 - 1.0) / n as f64 / c
}

/// Average-time adjustment `t_i − ⟨t⟩` for party `party`.
pub fn adjustment_from_estimates(
    estimates: &[TimeDifferenceEstimate],
    sequences: &[DistributionSequence],
    party: usize,
) -> Result<f64> {
    let n = sequences.first().map_or(0, |s| s.len());
    if sequences.len() as u64 != binomial(n as u64, n as u64 / 2).unwrap_or(0) {
        return Err(SyncError::Coverage(format!(
            "adjustment needs all C({n}, {}) sequences, got {}",
            n / 2,
            sequences.len()
        )));
    }
    Ok(reconstruction_weight(n) * sequence_contrast(estimates, sequences, party)?)
}

/// Quadrature sum of the per-sequence errors with the reconstruction weights.
pub fn propagate_adjustment_error(delta_t: &[f64], n: usize) -> f64 {
    let w = reconstruction_weight(n);
    (delta_t.iter().map(|d| w * w * d * d).sum::<f64>()).sqrt()
}

/// Full GHZ pipeline: invert every sequence fringe, then reconstruct every party.
pub fn estimate_ghz_adjustments(
    acc: &FringeAccumulator,
    sequences: &[DistributionSequence],
    omega: f64,
    mode: EstimatorMode,
    k: usize,
) -> Result<AdjustmentReport> {
    let n = sequences.first().map_or(0, |s| s.len());
    let estimates = estimate_time_differences(acc, sequences.len(), omega, mode)?;
    let plug_in: Vec<f64> = estimates.iter().map(|e| e.stderr).collect();
    let ideal: Vec<f64> = estimates
        .iter()
        .map(|e| {
            let base = 1.0 / (omega * (e.count as f64).sqrt());
            match mode {
                EstimatorMode::Linearized => base,
                EstimatorMode::TwoQuadrature => base * two_quadrature_penalty(omega * e.t_hat).sqrt(),
            }
        })
        .collect();
    let analytic = propagate_adjustment_error(&ideal, n);
    let estimated = propagate_adjustment_error(&plug_in, n);
    let parties = (0..n)
        .map(|party| {
            Ok(PartyAdjustment {
                party,
                estimate: adjustment_from_estimates(&estimates, sequences, party)?,
                analytic_stderr: analytic,
                estimated_stderr: estimated,
                truth: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AdjustmentReport {
        protocol: Protocol::Ghz,
        n,
        k,
        qubits: Protocol::Ghz.qubits(n, k),
        omega,
        estimator: mode,
        reference: Reference::Average,
        clamped: estimates.iter().filter(|e| e.clamped).count(),
        parties,
    })
}
