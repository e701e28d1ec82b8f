//! Distribution sequences, round scheduling, per-party measurements and the
//! broadcast log, for the GHZ, parallel-pairs and Dicke protocols.
//!
//! Parties are indexed from 0. In the pairs and Dicke protocols party 0 holds
//! the central clock.

mod ensemble;
mod log;
mod rounds;
mod schedule;
mod sequence;

use serde::{Deserialize, Serialize};

pub use ensemble::ClockEnsemble;
pub use log::{replay, BroadcastLog, LOG_HEADER};
pub use rounds::{
    dicke_round_angles, ghz_round_angles, pair_angles, run_round_dicke, run_round_ghz,
    run_round_pairs, run_round_set_pairs, DickeBackend, DickeRunner, GhzBackend, GhzRunner,
    MeasurementRecord, RecordSource,
};
pub use schedule::{make_cell_schedule, make_schedule, Quadrature, QuadraturePolicy, ScheduleMode, ScheduledRound};
pub use sequence::{
    binomial, enumerate_sequences, enumerate_sequences_capped, sequence_count, DistributionSequence,
    DEFAULT_ENUMERATION_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Protocol {
    Ghz,
    Pairs,
    Dicke,
}

impl Protocol {
    pub const ALL: [Protocol; 3] = [Protocol::Ghz, Protocol::Pairs, Protocol::Dicke];

    /// Qubits consumed by one round (one round-set for pairs).
    pub fn qubits_per_round(self, n: usize) -> usize {
        match self {
            Protocol::Ghz | Protocol::Dicke => n,
            Protocol::Pairs => 2 * (n - 1),
        }
    }

    pub fn qubits(self, n: usize, k: usize) -> usize {
        self.qubits_per_round(n) * k
    }

    pub fn name(self) -> &'static str {
        match self {
            Protocol::Ghz => "ghz",
            Protocol::Pairs => "pairs",
            Protocol::Dicke => "dicke",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "ghz" => Some(Protocol::Ghz),
            "pairs" => Some(Protocol::Pairs),
            "dicke" => Some(Protocol::Dicke),
            _ => None,
        }
    }
}

impl std::fmt::Display for Protocol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_accounting() {
        assert_eq!(Protocol::Ghz.qubits(4, 100), 400);
        assert_eq!(Protocol::Pairs.qubits(4, 100), 600);
        assert_eq!(Protocol::Dicke.qubits(8, 10), 80);
    }
}
