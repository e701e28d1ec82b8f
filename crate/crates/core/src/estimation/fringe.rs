use serde::{Deserialize, Serialize};

use super::accumulator::{CellKey, FringeAccumulator};
use crate::error::{Result, SyncError};

/// Sample mean of the outcome products in one cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FringeEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub count: u64,
}

/// Mean product and its standard error `√((1 − E²)/k)`, floored at `1/k`.
pub fn estimate_fringe(acc: &FringeAccumulator, key: &CellKey) -> Result<FringeEstimate> {
    let stats = acc
        .get(key)
        .filter(|s| s.count > 0)
        .ok_or_else(|| SyncError::Coverage(format!("no rounds recorded for {key:?}")))?;
    let k = stats.count as f64;
    let mean = stats.sum as f64 / k;
    let stderr = ((1.0 - mean * mean).max(0.0) / k).sqrt().max(1.0 / k);
    Ok(FringeEstimate { mean, stderr, count: stats.count })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorMode {
    /// Sine quadrature only, `T = −asin(E_sin / V)/ω`; valid for `|ωT| < π/2`.
    Linearized,
    /// Both quadratures, `T = atan2(−E_sin, E_cos)/ω`; valid for `|ωT| < π`.
    TwoQuadrature,
}

impl EstimatorMode {
    /// Half-width of the phase window the estimator can invert unambiguously.
    pub fn phase_window(self) -> f64 {
        match self {
            EstimatorMode::Linearized => std::f64::consts::FRAC_PI_2,
            EstimatorMode::TwoQuadrature => std::f64::consts::PI,
        }
    }
}

/// Time recovered from one fringe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseEstimate {
    pub value: f64,
    pub stderr: f64,
    /// Rounds used across both quadratures.
    pub count: u64,
    /// The fringe overshot the visibility and was clipped to the boundary.
    pub clamped: bool,
}

/// Inverts a fringe `E_cos = V cos(ωT)`, `E_sin = −V sin(ωT)` for the time `T`.
pub fn invert_phase(
    cosine: Option<&FringeEstimate>,
    sine: Option<&FringeEstimate>,
    visibility: f64,
    omega: f64,
    mode: EstimatorMode,
) -> Result<PhaseEstimate> {
    if !(visibility > 0.0 && visibility <= 1.0) {
        return Err(SyncError::InvalidEnsemble(format!("visibility must lie in (0, 1], got {visibility}")));
    }
    let sine = sine.ok_or_else(|| SyncError::Coverage("missing sine-quadrature fringe".into()))?;
    match mode {
        EstimatorMode::Linearized => {
            let ratio = sine.mean / visibility;
            let clamped = ratio.abs() > 1.0;
            let r = ratio.clamp(-1.0, 1.0);
            let k = sine.count as f64;
            let slope = (1.0 - r * r).max(1.0 / k).sqrt();
            Ok(PhaseEstimate {
                value: -r.asin() / omega,
                stderr: sine.stderr / (visibility * omega * slope),
                count: sine.count,
                clamped,
            })
        }
        EstimatorMode::TwoQuadrature => {
            let cosine = cosine.ok_or_else(|| SyncError::Coverage("missing cosine-quadrature fringe".into()))?;
            let s = -sine.mean / visibility;
            let c = cosine.mean / visibility;
            let clamped = s.abs() > 1.0 || c.abs() > 1.0;
            let (ss, sc) = (sine.stderr / visibility, cosine.stderr / visibility);
            let radius2 = (s * s + c * c).max(1e-12);
            Ok(PhaseEstimate {
                value: s.atan2(c) / omega,
                stderr: (c * c * ss * ss + s * s * sc * sc).sqrt() / (radius2 * omega),
                count: sine.count + cosine.count,
                clamped,
            })
        }
    }
}

/// Variance inflation of the two-quadrature estimator relative to the
/// linearized one at the same total round count, `2(sin⁴φ + cos⁴φ)`.
pub fn two_quadrature_penalty(phase: f64) -> f64 {
    2.0 * (phase.sin().powi(4) + phase.cos().powi(4))
}
