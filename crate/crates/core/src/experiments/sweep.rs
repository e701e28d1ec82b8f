use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, OffsetSpec};
use super::monte_carlo::{monte_carlo, ErrorSummary};
use crate::engine::{sample_ghz_closed_form, MeasurementAngles};
use crate::error::{Result, SyncError};
use crate::estimation::{invert_phase, EstimatorMode, FringeEstimate};
use crate::protocol::{
    ghz_round_angles, ClockEnsemble, DistributionSequence, Protocol, Quadrature, ScheduleMode,
    ScheduledRound,
};
use crate::seed::{derive_seed, stream_rng};

/// One `(protocol, N)` point of an efficiency sweep at fixed qubit budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyRow {
    pub protocol: Protocol,
    pub n: usize,
    pub q: usize,
    pub k: usize,
    pub trials: usize,
    pub rms_error: f64,
    pub empirical_accuracy: f64,
    pub analytic_accuracy: f64,
    pub ratio: f64,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Qubits per unit of `k` that the sweep's schedule requires for this point.
fn qubit_granularity(base: &ExperimentConfig, protocol: Protocol, n: usize) -> usize {
    let probe = ExperimentConfig { protocol, n, ..base.clone() };
    let rounds = match base.schedule {
        ScheduleMode::RoundRobin => probe.round_robin_multiple(),
        ScheduleMode::UniformRandom => 1,
    };
    protocol.qubits_per_round(n) * rounds
}

/// Runs a Monte Carlo experiment for every `(protocol, N)` at the same qubit
/// budget `q` and compares the measured accuracy with the closed form.
pub fn efficiency_sweep(
    base: &ExperimentConfig,
    n_list: &[usize],
    q: usize,
    protocols: &[Protocol],
) -> Result<Vec<EfficiencyRow>> {
    if n_list.is_empty() {
        return Err(SyncError::ConfigValue { key: "sweep_n".into(), reason: "list of N values is empty".into() });
    }
    if protocols.is_empty() {
        return Err(SyncError::ConfigValue { key: "sweep_protocols".into(), reason: "no protocols given".into() });
    }
    for &n in n_list {
        if n < 2 || n % 2 != 0 {
            return Err(SyncError::ConfigValue { key: "sweep_n".into(), reason: format!("N must be even and at least 2, got {n}") });
        }
    }
    let granularities: Vec<(Protocol, usize, usize)> = protocols
        .iter()
        .flat_map(|&p| n_list.iter().map(move |&n| (p, n)))
        .map(|(p, n)| (p, n, qubit_granularity(base, p, n)))
        .collect();
    let lcm = granularities.iter().fold(1usize, |acc, &(_, _, g)| acc / gcd(acc, g) * g);
    if let Some(&(p, n, g)) = granularities.iter().find(|&&(_, _, g)| q == 0 || !q.is_multiple_of(g)) {
        return Err(SyncError::ConfigValue {
            key: "sweep_q".into(),
            reason: format!(
                "Q = {q} is not a positive multiple of {g} required by {p} at N = {n}; \
                 a Q that is a multiple of {lcm} works for the whole sweep"
            ),
        });
    }
    let mut rows = Vec::new();
    for &protocol in protocols {
        for &n in n_list {
            let k = q / protocol.qubits_per_round(n);
            let config = ExperimentConfig {
                protocol,
                n,
                k,
                offsets: OffsetSpec::Random { spread: None },
                ..base.clone()
            };
            let summary = monte_carlo(&config)?;
            let analytic_accuracy = crate::estimation::qubit_efficiency(protocol, n, q)?;
            let empirical_accuracy = summary.empirical_accuracy();
            rows.push(EfficiencyRow {
                protocol,
                n,
                q,
                k,
                trials: config.trials,
                rms_error: summary.pooled.rms_error,
                empirical_accuracy,
                analytic_accuracy,
                ratio: empirical_accuracy / analytic_accuracy,
            });
        }
    }
    Ok(rows)
}

/// Sampling-only check for GHZ registers too large for full reconstruction:
/// each trial draws a random balanced sequence and random offsets, measures `k`
/// sine rounds through the closed-form sampler and inverts the single fringe.
/// The returned summary compares the RMS error of `T_j` with `1/(ω√k)`.
pub fn large_n_fringe_scaling(n: usize, k: usize, trials: usize, omega: f64, seed: u64) -> Result<ErrorSummary> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(SyncError::InvalidEnsemble(format!("N must be even and at least 2, got {n}")));
    }
    if k == 0 || trials == 0 {
        return Err(SyncError::InvalidEnsemble("k and trials must be positive".into()));
    }
    let spread = 1.2 / n as f64;
    let pairs = (0..trials)
        .map(|t| {
            let trial_seed = derive_seed(seed, t as u64);
            let mut rng = stream_rng(trial_seed, 0);
            let mut flags: Vec<u8> = (0..n).map(|i| u8::from(i >= n / 2)).collect();
            flags.shuffle(&mut rng);
            let seq = DistributionSequence::unranked(flags)?;
            let offsets = (0..n).map(|_| rng.gen_range(-spread..=spread) / omega).collect();
            let ensemble = ClockEnsemble::new(omega, offsets)?;
            let round = ScheduledRound { index: 0, sequence_index: 0, quadrature: Quadrature::Sine, nominal_time: 0.0 };
            let angles: MeasurementAngles = ghz_round_angles(&ensemble, &seq, &round)?;
            let sum: i64 = (0..k)
                .map(|_| sample_ghz_closed_form(&seq, &angles, &mut rng).map(|o| i64::from(o.product())))
                .sum::<Result<i64>>()?;
            let mean = sum as f64 / k as f64;
            let fringe = FringeEstimate {
                mean,
                stderr: ((1.0 - mean * mean).max(0.0) / k as f64).sqrt().max(1.0 / k as f64),
                count: k as u64,
            };
            let est = invert_phase(None, Some(&fringe), 1.0, omega, EstimatorMode::Linearized)?;
            let truth = seq.time_difference(ensemble.true_offsets());
            Ok((est.value - truth, 1.0 / (omega * (k as f64).sqrt())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ErrorSummary::from_pairs(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_rejects_bad_budgets() {
        let base = ExperimentConfig::new(Protocol::Ghz, 4, 6).with_trials(2);
        let err = efficiency_sweep(&base, &[], 100, &Protocol::ALL).unwrap_err();
        assert!(matches!(err, SyncError::ConfigValue { ref key, .. } if key == "sweep_n"));
        let err = efficiency_sweep(&base, &[4], 100, &Protocol::ALL).unwrap_err();
        match err {
            SyncError::ConfigValue { key, reason } => {
                assert_eq!(key, "sweep_q");
                // GHZ N=4 needs 4·6 = 24, pairs 6, Dicke 4: lcm 24
                assert!(reason.contains("multiple of 24"), "{reason}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_sweep_runs() {
        let base = ExperimentConfig::new(Protocol::Ghz, 4, 6).with_trials(8).with_seed(4);
        let rows = efficiency_sweep(&base, &[2, 4], 2400, &Protocol::ALL).unwrap();
        assert_eq!(rows.len(), 6);
        for r in &rows {
            assert_eq!(r.analytic_accuracy, crate::estimation::qubit_efficiency(r.protocol, r.n, r.q).unwrap());
            assert!(r.empirical_accuracy > 0.0);
        }
    }

    #[test]
    fn large_register_fringe() {
        let s = large_n_fringe_scaling(40, 2000, 60, 1.0, 9).unwrap();
        assert_eq!(s.samples, 60);
        assert!((s.ratio - 1.0).abs() < 0.35, "{s:?}");
    }
}
