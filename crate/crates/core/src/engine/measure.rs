use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::state::PureState;
use crate::error::{Result, SyncError};

/// Local measurement phases θ_i, one per qubit.
///
/// Qubit i is measured in the eigenbasis of `X(θ) = e^{-iθ}|0⟩⟨1| + e^{iθ}|1⟩⟨0|`,
/// whose outcome-x eigenstate is `(|0⟩ + x e^{iθ}|1⟩)/√2`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementAngles(Vec<f64>);

impl MeasurementAngles {
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if let Some(bad) = angles.iter().find(|a| !a.is_finite()) {
            return Err(SyncError::InvalidEnsemble(format!("non-finite measurement angle {bad}")));
        }
        Ok(MeasurementAngles(angles))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// One ±1 result per qubit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OutcomeString(Vec<i8>);

impl OutcomeString {
    pub fn new(outcomes: Vec<i8>) -> Result<Self> {
        if let Some(bad) = outcomes.iter().find(|&&x| x != 1 && x != -1) {
            return Err(SyncError::InvalidEnsemble(format!("outcome {bad} is not ±1")));
        }
        Ok(OutcomeString(outcomes))
    }

    /// Decodes a distribution-table index: a set bit (qubit 0 most significant) means −1.
    pub fn from_index(index: usize, n: usize) -> Self {
        OutcomeString(
            (0..n)
                .map(|q| if (index >> (n - 1 - q)) & 1 == 1 { -1 } else { 1 })
                .collect(),
        )
    }

    pub fn index(&self) -> usize {
        self.0.iter().fold(0usize, |acc, &x| (acc << 1) | usize::from(x < 0))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn product(&self) -> i8 {
        self.0.iter().product()
    }
}

/// Exact joint distribution of simultaneous local `X(θ_i)` measurements.
///
/// Entry `x` of the returned table is `|⟨x|ψ⟩|²`, indexed as in
/// [`OutcomeString::from_index`]. Built with one basis rotation per qubit, so
/// the cost is `O(N 2^N)`.
pub fn outcome_distribution(state: &PureState, angles: &MeasurementAngles) -> Result<Vec<f64>> {
    let n = state.num_qubits();
    if angles.len() != n {
        return Err(SyncError::DimensionMismatch { expected: n, actual: angles.len() });
    }
    let mut amps: Vec<Complex64> = state.amplitudes().to_vec();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for (q, &theta) in angles.as_slice().iter().enumerate() {
        let stride = 1usize << (n - 1 - q);
        let phase = Complex64::from_polar(1.0, -theta);
        for block in (0..amps.len()).step_by(2 * stride) {
            for i in block..block + stride {
                let a0 = amps[i];
                let a1 = amps[i + stride] * phase;
                amps[i] = (a0 + a1) * s;
                amps[i + stride] = (a0 - a1) * s;
            }
        }
    }
    let probs: Vec<f64> = amps.iter().map(|a| a.norm_sqr()).collect();
    let total: f64 = probs.iter().sum();
    assert!(
        (total - 1.0).abs() < 1e-9,
        "outcome distribution sums to {total}, state lost normalization"
    );
    Ok(probs)
}

/// Inverse-CDF sampler over a fixed probability table.
#[derive(Debug, Clone)]
pub struct OutcomeSampler {
    num_qubits: usize,
    cumulative: Vec<f64>,
}

impl OutcomeSampler {
    pub fn new(state: &PureState, angles: &MeasurementAngles) -> Result<Self> {
        let probs = outcome_distribution(state, angles)?;
        let mut acc = 0.0;
        let cumulative = probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Ok(OutcomeSampler { num_qubits: state.num_qubits(), cumulative })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> OutcomeString {
        let total = *self.cumulative.last().expect("non-empty table");
        let u = rng.gen::<f64>() * total;
        let index = self
            .cumulative
            .partition_point(|&c| c <= u)
            .min(self.cumulative.len() - 1);
        OutcomeString::from_index(index, self.num_qubits)
    }
}

/// Draws one outcome string from the exact distribution of `state` at `angles`.
pub fn sample_outcome<R: Rng + ?Sized>(
    state: &PureState,
    angles: &MeasurementAngles,
    rng: &mut R,
) -> Result<OutcomeString> {
    Ok(OutcomeSampler::new(state, angles)?.sample(rng))
}
