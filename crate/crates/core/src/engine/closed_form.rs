//! Samplers that never touch a statevector.
//!
//! The GHZ sampler works for any register size; the two-qubit samplers cover the
//! Bell pairs and the pair marginals of the Dicke state.

use rand::Rng;

use super::measure::{MeasurementAngles, OutcomeString};
use crate::error::{Result, SyncError};
use crate::protocol::DistributionSequence;

/// Collective fringe phase `Σ (-1)^{f_i} θ_i` of a GHZ-type state.
pub fn ghz_fringe_phase(seq: &DistributionSequence, angles: &MeasurementAngles) -> Result<f64> {
    if angles.len() != seq.len() {
        return Err(SyncError::DimensionMismatch { expected: seq.len(), actual: angles.len() });
    }
    Ok(seq
        .flags()
        .iter()
        .zip(angles.as_slice())
        .map(|(&f, &theta)| if f == 0 { theta } else { -theta })
        .sum())
}

/// The two-stage law behind [`sample_ghz_closed_form`]: a parity bit with
/// `P(+1) = (1 + cos φ)/2`, then a uniform string of that parity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzParityLaw {
    pub num_qubits: usize,
    pub phase: f64,
}

impl GhzParityLaw {
    pub fn new(seq: &DistributionSequence, angles: &MeasurementAngles) -> Result<Self> {
        Ok(GhzParityLaw { num_qubits: seq.len(), phase: ghz_fringe_phase(seq, angles)? })
    }

    pub fn prob_even(&self) -> f64 {
        (0.5 * (1.0 + self.phase.cos())).clamp(0.0, 1.0)
    }

    pub fn parity_probability(&self, parity: i8) -> f64 {
        if parity > 0 {
            self.prob_even()
        } else {
            1.0 - self.prob_even()
        }
    }

    /// Probability of one full outcome string under this law.
    pub fn probability(&self, outcome: &OutcomeString) -> f64 {
        let strings_per_parity = 2f64.powi(self.num_qubits as i32 - 1);
        self.parity_probability(outcome.product()) / strings_per_parity
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> OutcomeString {
        let parity: i8 = if rng.gen::<f64>() < self.prob_even() { 1 } else { -1 };
        let n = self.num_qubits;
        let mut outcomes: Vec<i8> = (0..n - 1).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect();
        let partial: i8 = outcomes.iter().product();
        outcomes.push(partial * parity);
        OutcomeString::new(outcomes).expect("±1 by construction")
    }
}

/// Samples a GHZ-type outcome string from the parity law; valid for any N.
pub fn sample_ghz_closed_form<R: Rng + ?Sized>(
    seq: &DistributionSequence,
    angles: &MeasurementAngles,
    rng: &mut R,
) -> Result<OutcomeString> {
    Ok(GhzParityLaw::new(seq, angles)?.sample(rng))
}

/// Joint law of two equatorial measurements with product expectation `correlation`
/// and uniform marginals: `P(a, b) = (1 + a b c)/4`.
pub fn pair_probability(a: i8, b: i8, correlation: f64) -> f64 {
    0.25 * (1.0 + f64::from(a * b) * correlation)
}

fn sample_correlated_pair<R: Rng + ?Sized>(correlation: f64, rng: &mut R) -> (i8, i8) {
    let p_same = (0.5 * (1.0 + correlation)).clamp(0.0, 1.0);
    let product: i8 = if rng.gen::<f64>() < p_same { 1 } else { -1 };
    let second: i8 = if rng.gen::<bool>() { 1 } else { -1 };
    (product * second, second)
}

/// Bell pair `(|01⟩ + |10⟩)/√2` measured at `(theta_p, theta_c)`; returns `(x_p, x_c)`.
pub fn sample_bell_pair_outcomes<R: Rng + ?Sized>(theta_p: f64, theta_c: f64, rng: &mut R) -> (i8, i8) {
    sample_correlated_pair((theta_p - theta_c).cos(), rng)
}

/// Fringe visibility of any two-qubit marginal of the N-qubit symmetric Dicke state.
pub fn dicke_visibility(n: usize) -> Result<f64> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(SyncError::InvalidEnsemble(format!("Dicke state needs even N >= 2, got {n}")));
    }
    Ok(n as f64 / (2.0 * (n as f64 - 1.0)))
}

/// Product expectation `⟨X(θ_c) ⊗ X(θ_i)⟩` for two qubits of the Dicke state.
pub fn dicke_pair_correlation(n: usize, delta_theta: f64) -> Result<f64> {
    Ok(dicke_visibility(n)? * delta_theta.cos())
}

/// Draws `(x_c, x_i)` from the Dicke pair marginal. Preserves each pair's law but
/// not the correlations between different pairs sharing the central qubit.
pub fn sample_dicke_pair<R: Rng + ?Sized>(n: usize, theta_c: f64, theta_i: f64, rng: &mut R) -> Result<(i8, i8)> {
    let c = dicke_pair_correlation(n, theta_i - theta_c)?;
    Ok(sample_correlated_pair(c, rng))
}
