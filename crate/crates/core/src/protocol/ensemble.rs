use rand::Rng;

use crate::error::{Result, SyncError};

/// N parties with clocks ticking at angular frequency ω and hidden offsets t_i.
#[derive(Debug, Clone, PartialEq)]
pub struct ClockEnsemble {
    omega: f64,
    true_offsets: Vec<f64>,
}

impl ClockEnsemble {
    pub fn new(omega: f64, true_offsets: Vec<f64>) -> Result<Self> {
        let n = true_offsets.len();
        if n < 2 || !n.is_multiple_of(2) {
            return Err(SyncError::InvalidEnsemble(format!("N must be even and at least 2, got {n}")));
        }
        if !(omega.is_finite() && omega > 0.0) {
            return Err(SyncError::InvalidEnsemble(format!("omega must be positive, got {omega}")));
        }
        if true_offsets.iter().any(|t| !t.is_finite()) {
            return Err(SyncError::InvalidEnsemble("clock offsets must be finite".into()));
        }
        Ok(ClockEnsemble { omega, true_offsets })
    }

    /// Offsets drawn uniformly so that `ω t_i ∈ [-spread, spread]`.
    pub fn random<R: Rng + ?Sized>(n: usize, omega: f64, spread: f64, rng: &mut R) -> Result<Self> {
        if !(spread.is_finite() && spread >= 0.0) {
            return Err(SyncError::InvalidEnsemble(format!("offset spread must be non-negative, got {spread}")));
        }
        let offsets = (0..n)
            .map(|_| if spread > 0.0 { rng.gen_range(-spread..=spread) / omega } else { 0.0 })
            .collect();
        Self::new(omega, offsets)
    }

    pub fn n(&self) -> usize {
        self.true_offsets.len()
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn true_offsets(&self) -> &[f64] {
        &self.true_offsets
    }

    pub fn mean_offset(&self) -> f64 {
        self.true_offsets.iter().sum::<f64>() / self.n() as f64
    }

    /// Phase ω(τ₀ + t_i) of party `i`'s clock when it reads `nominal_time`.
    pub fn phase(&self, party: usize, nominal_time: f64) -> f64 {
        self.omega * (nominal_time + self.true_offsets[party])
    }

    /// True average-time adjustments t_i − ⟨t⟩.
    pub fn true_adjustments(&self) -> Vec<f64> {
        let mean = self.mean_offset();
        self.true_offsets.iter().map(|t| t - mean).collect()
    }

    /// True offsets relative to party 0, t_i − t_0.
    pub fn true_central_offsets(&self) -> Vec<f64> {
        let t0 = self.true_offsets[0];
        self.true_offsets.iter().map(|t| t - t0).collect()
    }
}
