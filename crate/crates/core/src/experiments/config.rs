use serde::{Deserialize, Serialize};

use crate::engine::DEFAULT_STATEVECTOR_LIMIT;
use crate::error::{Result, SyncError};
use crate::estimation::EstimatorMode;
use crate::protocol::{
    sequence_count, DickeBackend, GhzBackend, Protocol, QuadraturePolicy, ScheduleMode,
};

/// Offset spread ωΔmax used when none is given.
pub const DEFAULT_SPREAD: f64 = 0.3;

/// GHZ reconstruction needs every sequence; beyond this N the sequence table
/// is only used for sampling-level checks.
pub const MAX_FULL_COVERAGE_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OffsetSpec {
    /// Fixed clock offsets t_i, in time units.
    Explicit(Vec<f64>),
    /// Fresh uniform offsets per trial with ω t_i ∈ [−spread, spread].
    /// `None` picks the default window for the protocol.
    Random { spread: Option<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub protocol: Protocol,
    pub n: usize,
    pub omega: f64,
    pub offsets: OffsetSpec,
    /// Rounds per trial (round-sets for pairs).
    pub k: usize,
    pub trials: usize,
    pub schedule: ScheduleMode,
    pub estimator: EstimatorMode,
    pub seed: u64,
    pub statevector_limit: usize,
    pub nominal_time: f64,
    pub ghz_backend: GhzBackend,
    pub dicke_backend: DickeBackend,
}

fn value_err(key: &str, reason: impl Into<String>) -> SyncError {
    SyncError::ConfigValue { key: key.to_string(), reason: reason.into() }
}

impl ExperimentConfig {
    pub fn new(protocol: Protocol, n: usize, k: usize) -> Self {
        ExperimentConfig {
            protocol,
            n,
            omega: 1.0,
            offsets: OffsetSpec::Random { spread: None },
            k,
            trials: 200,
            schedule: ScheduleMode::RoundRobin,
            estimator: EstimatorMode::Linearized,
            seed: 0,
            statevector_limit: DEFAULT_STATEVECTOR_LIMIT,
            nominal_time: 0.0,
            ghz_backend: GhzBackend::ClosedForm,
            dicke_backend: DickeBackend::Auto,
        }
    }

    pub fn with_offsets(mut self, offsets: Vec<f64>) -> Self {
        self.offsets = OffsetSpec::Explicit(offsets);
        self
    }

    pub fn with_spread(mut self, spread: f64) -> Self {
        self.offsets = OffsetSpec::Random { spread: Some(spread) };
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_omega(mut self, omega: f64) -> Self {
        self.omega = omega;
        self
    }

    pub fn with_estimator(mut self, estimator: EstimatorMode) -> Self {
        self.estimator = estimator;
        self
    }

    pub fn with_schedule(mut self, schedule: ScheduleMode) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn with_nominal_time(mut self, nominal_time: f64) -> Self {
        self.nominal_time = nominal_time;
        self
    }

    pub fn with_statevector_limit(mut self, limit: usize) -> Self {
        self.statevector_limit = limit;
        self
    }

    pub fn with_ghz_backend(mut self, backend: GhzBackend) -> Self {
        self.ghz_backend = backend;
        self
    }

    pub fn with_dicke_backend(mut self, backend: DickeBackend) -> Self {
        self.dicke_backend = backend;
        self
    }

    pub fn quadrature_policy(&self) -> QuadraturePolicy {
        match self.estimator {
            EstimatorMode::Linearized => QuadraturePolicy::SineOnly,
            EstimatorMode::TwoQuadrature => QuadraturePolicy::Alternate,
        }
    }

    /// Schedule cells: one per sequence for GHZ, one in total for the pair protocols.
    pub fn num_sequences(&self) -> usize {
        match self.protocol {
            Protocol::Ghz => sequence_count(self.n).map_or(usize::MAX, |c| c as usize),
            Protocol::Pairs | Protocol::Dicke => 1,
        }
    }

    /// Multiple that `k` must be for a round-robin schedule.
    pub fn round_robin_multiple(&self) -> usize {
        self.num_sequences().saturating_mul(self.quadrature_policy().quadratures().len())
    }

    /// Largest |ωT| the fringe inversion can face for a spread `s`, per unit spread.
    fn phase_extent_per_spread(&self) -> f64 {
        match self.protocol {
            Protocol::Ghz => self.n as f64,
            Protocol::Pairs | Protocol::Dicke => 2.0,
        }
    }

    /// Spread actually used for random offsets. The GHZ default shrinks with N
    /// so that the worst-case sequence phase stays at 1.2 rad.
    pub fn effective_spread(&self) -> Option<f64> {
        match &self.offsets {
            OffsetSpec::Explicit(_) => None,
            OffsetSpec::Random { spread: Some(s) } => Some(*s),
            OffsetSpec::Random { spread: None } => Some(match self.protocol {
                Protocol::Ghz => DEFAULT_SPREAD.min(4.0 * DEFAULT_SPREAD / self.n as f64),
                Protocol::Pairs | Protocol::Dicke => DEFAULT_SPREAD,
            }),
        }
    }

    /// Worst-case |ωT| over every fringe the estimator inverts.
    pub fn max_fringe_phase(&self) -> f64 {
        match (&self.offsets, self.protocol) {
            (OffsetSpec::Explicit(t), Protocol::Ghz) => {
                let mut sorted = t.clone();
                sorted.sort_by(f64::total_cmp);
                let half = sorted.len() / 2;
                let low: f64 = sorted[..half].iter().sum();
                let high: f64 = sorted[half..].iter().sum();
                self.omega * (high - low)
            }
            (OffsetSpec::Explicit(t), _) => t.iter().map(|ti| (self.omega * (ti - t[0])).abs()).fold(0.0, f64::max),
            (OffsetSpec::Random { .. }, _) => {
                self.phase_extent_per_spread() * self.effective_spread().unwrap_or(0.0)
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || !self.n.is_multiple_of(2) {
            return Err(value_err("n", format!("N must be even and at least 2, got {}", self.n)));
        }
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(value_err("omega", "must be a positive number"));
        }
        if self.k == 0 {
            return Err(value_err("k", "must be positive"));
        }
        if self.trials == 0 {
            return Err(value_err("trials", "must be positive"));
        }
        if !(2..=30).contains(&self.statevector_limit) {
            return Err(value_err("statevector_limit", "must lie between 2 and 30"));
        }
        if !self.nominal_time.is_finite() {
            return Err(value_err("nominal_time", "must be finite"));
        }
        match &self.offsets {
            OffsetSpec::Explicit(t) => {
                if t.len() != self.n {
                    return Err(value_err("offsets", format!("expected {} values, got {}", self.n, t.len())));
                }
                if t.iter().any(|x| !x.is_finite()) {
                    return Err(value_err("offsets", "values must be finite"));
                }
            }
            OffsetSpec::Random { spread: Some(s) } if !(s.is_finite() && *s >= 0.0) => {
                return Err(value_err("spread", "must be a non-negative number"));
            }
            OffsetSpec::Random { .. } => {}
        }
        if self.protocol == Protocol::Ghz && self.n > MAX_FULL_COVERAGE_N {
            return Err(value_err(
                "n",
                format!(
                    "GHZ reconstruction needs all C(N, N/2) sequences and is capped at N = {MAX_FULL_COVERAGE_N}; \
                     use experiments::large_n_fringe_scaling for larger registers"
                ),
            ));
        }
        let window = self.estimator.phase_window();
        let extent = self.max_fringe_phase();
        if extent >= window {
            let key = if matches!(self.offsets, OffsetSpec::Explicit(_)) { "offsets" } else { "spread" };
            return Err(value_err(
                key,
                format!(
                    "worst-case fringe phase {extent:.4} rad leaves the {:?} window of {window:.4} rad",
                    self.estimator
                ),
            ));
        }
        if self.schedule == ScheduleMode::RoundRobin {
            let multiple = self.round_robin_multiple();
            if !self.k.is_multiple_of(multiple) {
                return Err(value_err(
                    "k",
                    format!("round-robin needs k to be a multiple of {multiple}, got {}", self.k),
                ));
            }
        }
        Ok(())
    }
}
