use rand::Rng;
use serde::{Deserialize, Serialize};

use super::sequence::sequence_count;
use crate::error::{Result, SyncError};

/// Which fringe a round samples. Sine rounds delay one measurement by a quarter period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quadrature {
    Cosine,
    Sine,
}

impl Quadrature {
    /// Phase added to the shifted measurement.
    pub fn shift(self) -> f64 {
        match self {
            Quadrature::Cosine => 0.0,
            Quadrature::Sine => std::f64::consts::FRAC_PI_2,
        }
    }

    pub fn tag(self) -> char {
        match self {
            Quadrature::Cosine => 'C',
            Quadrature::Sine => 'S',
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "C" => Some(Quadrature::Cosine),
            "S" => Some(Quadrature::Sine),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadraturePolicy {
    CosineOnly,
    SineOnly,
    Alternate,
}

impl QuadraturePolicy {
    pub fn quadratures(self) -> &'static [Quadrature] {
        match self {
            QuadraturePolicy::CosineOnly => &[Quadrature::Cosine],
            QuadraturePolicy::SineOnly => &[Quadrature::Sine],
            QuadraturePolicy::Alternate => &[Quadrature::Cosine, Quadrature::Sine],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleMode {
    /// Every (sequence, quadrature) cell measured equally often, in a fixed cycle.
    RoundRobin,
    /// Sequence drawn uniformly at random each round; quadratures still alternate.
    UniformRandom,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScheduledRound {
    pub index: usize,
    pub sequence_index: usize,
    pub quadrature: Quadrature,
    pub nominal_time: f64,
}

/// GHZ schedule over all C(N, N/2) sequences.
pub fn make_schedule<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    mode: ScheduleMode,
    policy: QuadraturePolicy,
    rng: &mut R,
) -> Result<Vec<ScheduledRound>> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(SyncError::InvalidEnsemble(format!("N must be even and at least 2, got {n}")));
    }
    let cells = sequence_count(n)
        .filter(|&c| c <= usize::MAX as u64)
        .ok_or_else(|| SyncError::InvalidEnsemble(format!("too many sequences for N = {n}")))?;
    make_cell_schedule(cells as usize, k, mode, policy, 0.0, rng)
}

/// Schedule over `num_sequences` cells; pair protocols use a single cell.
pub fn make_cell_schedule<R: Rng + ?Sized>(
    num_sequences: usize,
    k: usize,
    mode: ScheduleMode,
    policy: QuadraturePolicy,
    nominal_time: f64,
    rng: &mut R,
) -> Result<Vec<ScheduledRound>> {
    let quads = policy.quadratures();
    let period = num_sequences * quads.len();
    if k == 0 {
        return Err(SyncError::Indivisible { k, multiple: if mode == ScheduleMode::RoundRobin { period } else { 1 } });
    }
    if mode == ScheduleMode::RoundRobin && !k.is_multiple_of(period) {
        return Err(SyncError::Indivisible { k, multiple: period });
    }
    Ok((0..k)
        .map(|index| {
            let quadrature = quads[index % quads.len()];
            let sequence_index = match mode {
                ScheduleMode::RoundRobin => (index / quads.len()) % num_sequences,
                ScheduleMode::UniformRandom => rng.gen_range(0..num_sequences),
            };
            ScheduledRound { index, sequence_index, quadrature, nominal_time }
        })
        .collect())
}
