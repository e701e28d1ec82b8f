use super::accumulator::{CellKey, FringeAccumulator};
use super::fringe::{estimate_fringe, invert_phase, two_quadrature_penalty, EstimatorMode};
use super::report::{AdjustmentReport, PartyAdjustment, Reference};
use crate::engine::dicke_visibility;
use crate::error::{Result, SyncError};
use crate::protocol::{Protocol, Quadrature};

fn estimate_central_offsets(
    acc: &FringeAccumulator,
    protocol: Protocol,
    n: usize,
    omega: f64,
    visibility: f64,
    mode: EstimatorMode,
    k: usize,
) -> Result<AdjustmentReport> {
    let mut clamped = 0;
    let mut parties = vec![PartyAdjustment { party: 0, estimate: 0.0, analytic_stderr: 0.0, estimated_stderr: 0.0, truth: None }];
    for party in 1..n {
        let cell = |quadrature| CellKey::Party { index: party, quadrature };
        let sine = estimate_fringe(acc, &cell(Quadrature::Sine))
            .map_err(|_| SyncError::Coverage(format!("party {party} has no sine-quadrature rounds")))?;
        let cosine = match mode {
            EstimatorMode::Linearized => None,
            EstimatorMode::TwoQuadrature => Some(
                estimate_fringe(acc, &cell(Quadrature::Cosine))
                    .map_err(|_| SyncError::Coverage(format!("party {party} has no cosine-quadrature rounds")))?,
            ),
        };
        let p = invert_phase(cosine.as_ref(), Some(&sine), visibility, omega, mode)?;
        clamped += usize::from(p.clamped);
        let base = 1.0 / (visibility * omega * (p.count as f64).sqrt());
        let analytic = match mode {
            EstimatorMode::Linearized => base,
            EstimatorMode::TwoQuadrature => base * two_quadrature_penalty(omega * p.value).sqrt(),
        };
        parties.push(PartyAdjustment {
            party,
            estimate: p.value,
            analytic_stderr: analytic,
            estimated_stderr: p.stderr,
            truth: None,
        });
    }
    Ok(AdjustmentReport {
        protocol,
        n,
        k,
        qubits: protocol.qubits(n, k),
        omega,
        estimator: mode,
        reference: Reference::Central,
        clamped,
        parties,
    })
}

/// Offsets `t_i − t_0` from Bell pairs shared with the central clock.
pub fn estimate_pairs_offsets(
    acc: &FringeAccumulator,
    n: usize,
    omega: f64,
    mode: EstimatorMode,
    k: usize,
) -> Result<AdjustmentReport> {
    estimate_central_offsets(acc, Protocol::Pairs, n, omega, 1.0, mode, k)
}

/// Offsets `t_i − t_0` from Dicke-state pair correlations (visibility N/(2(N−1))).
pub fn estimate_dicke_offsets(
    acc: &FringeAccumulator,
    n: usize,
    omega: f64,
    mode: EstimatorMode,
    k: usize,
) -> Result<AdjustmentReport> {
    estimate_central_offsets(acc, Protocol::Dicke, n, omega, dicke_visibility(n)?, mode, k)
}
