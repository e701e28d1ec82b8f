use num_complex::Complex64;

use crate::error::{Result, SyncError};
use crate::protocol::DistributionSequence;

/// Largest register the statevector paths will allocate by default (1 MiB of amplitudes).
pub const DEFAULT_STATEVECTOR_LIMIT: usize = 16;

const NORM_TOLERANCE: f64 = 1e-9;

/// A pure state of `num_qubits` qubits.
///
/// Amplitudes are indexed by basis bitstring value with qubit 0 as the most
/// significant bit, so for three qubits index `0b100` is `|100⟩`, i.e. qubit 0
/// excited.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wraps an amplitude vector, checking its length and normalization.
    pub fn from_amplitudes(num_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if num_qubits == 0 {
            return Err(SyncError::InvalidEnsemble("a state needs at least one qubit".into()));
        }
        if num_qubits >= usize::BITS as usize || amplitudes.len() != 1usize << num_qubits {
            return Err(SyncError::DimensionMismatch {
                expected: 1usize.checked_shl(num_qubits as u32).unwrap_or(0),
                actual: amplitudes.len(),
            });
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(SyncError::NotNormalized(norm));
        }
        Ok(PureState { num_qubits, amplitudes })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn squared_norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Free evolution for a delay with phase `tau` (= ωΔt): every basis
    /// amplitude of excitation number w picks up `exp(-i w tau)`.
    pub fn evolve_free(&self, tau: f64) -> PureState {
        let amplitudes = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(index, a)| {
                let weight = index.count_ones() as f64;
                a * Complex64::from_polar(1.0, -weight * tau)
            })
            .collect();
        PureState { num_qubits: self.num_qubits, amplitudes }
    }

    /// Basis indices carrying a nonzero amplitude.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > 0.0)
            .map(|(i, _)| i)
    }
}

fn check_capacity(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(SyncError::Capacity { requested: n, limit });
    }
    Ok(())
}

fn check_even(n: usize) -> Result<()> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(SyncError::InvalidEnsemble(format!(
            "N must be even and at least 2, got {n}"
        )));
    }
    Ok(())
}

/// Index of a bitstring with `bits[0]` as the most significant bit.
pub fn bits_to_index(bits: &[u8]) -> usize {
    bits.iter().fold(0usize, |acc, &b| (acc << 1) | usize::from(b != 0))
}

/// Balanced GHZ-type energy eigenstate `(|f⟩ + |f̄⟩)/√2` for a distribution sequence.
pub fn build_ghz_state(seq: &DistributionSequence, limit: usize) -> Result<PureState> {
    let n = seq.len();
    check_even(n)?;
    check_capacity(n, limit)?;
    let index = bits_to_index(seq.flags());
    let complement = !index & ((1usize << n) - 1);
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
    let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amplitudes[index] = a;
    amplitudes[complement] = a;
    PureState::from_amplitudes(n, amplitudes)
}

/// `(|01⟩ + |10⟩)/√2`, one factor of the parallel-pairs resource.
pub fn build_bell_pair() -> PureState {
    let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    PureState { num_qubits: 2, amplitudes: vec![zero, a, a, zero] }
}

/// Symmetric Dicke state with N/2 excitations.
pub fn build_dicke_state(n: usize, limit: usize) -> Result<PureState> {
    check_even(n)?;
    check_capacity(n, limit)?;
    let half = (n / 2) as u32;
    let count = (0..1usize << n).filter(|i| i.count_ones() == half).count();
    let a = Complex64::new(1.0 / (count as f64).sqrt(), 0.0);
    let amplitudes = (0..1usize << n)
        .map(|i| if i.count_ones() == half { a } else { Complex64::new(0.0, 0.0) })
        .collect();
    PureState::from_amplitudes(n, amplitudes)
}
