use crate::error::{Result, SyncError};
use crate::protocol::Protocol;

/// Predicted per-party adjustment error after `k` rounds (round-sets for pairs).
pub fn analytic_adjustment_stderr(protocol: Protocol, n: usize, omega: f64, k: usize) -> f64 {
    let nf = n as f64;
    let base = 1.0 / (omega * (k as f64).sqrt());
    match protocol {
        Protocol::Ghz => (nf - 1.0) / nf * base,
        Protocol::Pairs => base,
        Protocol::Dicke => 2.0 * (nf - 1.0) / nf * base,
    }
}

/// Synchronization accuracy `1/(ω δt)²` bought with `q` qubits.
pub fn qubit_efficiency(protocol: Protocol, n: usize, q: usize) -> Result<f64> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(SyncError::InvalidEnsemble(format!("N must be even and at least 2, got {n}")));
    }
    let cost = protocol.qubits_per_round(n);
    if q == 0 || !q.is_multiple_of(cost) {
        return Err(SyncError::QubitBudget(format!(
            "{protocol} rounds use {cost} qubits each, so Q = {q} must be a positive multiple of {cost}"
        )));
    }
    let ratio = n as f64 / (n as f64 - 1.0);
    let per_party = q as f64 / n as f64;
    Ok(match protocol {
        Protocol::Ghz => ratio * ratio * per_party,
        Protocol::Pairs => 0.5 * ratio * per_party,
        Protocol::Dicke => 0.25 * ratio * ratio * per_party,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert!((qubit_efficiency(Protocol::Ghz, 4, 400).unwrap() - 1600.0 / 9.0).abs() < 1e-12);
        assert!((qubit_efficiency(Protocol::Pairs, 4, 600).unwrap() - 100.0).abs() < 1e-12);
        let g = qubit_efficiency(Protocol::Ghz, 6, 600).unwrap();
        let d = qubit_efficiency(Protocol::Dicke, 6, 600).unwrap();
        assert!((d / g - 0.25).abs() < 1e-15);
        assert!(matches!(qubit_efficiency(Protocol::Pairs, 4, 400), Err(SyncError::QubitBudget(_))));
        assert!(qubit_efficiency(Protocol::Ghz, 3, 300).is_err());
    }

    #[test]
    fn efficiency_is_inverse_square_error() {
        for protocol in Protocol::ALL {
            for n in [2usize, 4, 8] {
                let k = 250;
                let q = protocol.qubits(n, k);
                let dt = analytic_adjustment_stderr(protocol, n, 1.0, k);
                let acc = qubit_efficiency(protocol, n, q).unwrap();
                assert!((acc * dt * dt - 1.0).abs() < 1e-12, "{protocol} n={n}");
            }
        }
    }

    #[test]
    fn ordering_and_ratios() {
        for n in (4..=40).step_by(2) {
            let q = n * 2 * (n - 1);
            let g = qubit_efficiency(Protocol::Ghz, n, q).unwrap();
            let p = qubit_efficiency(Protocol::Pairs, n, q).unwrap();
            let d = qubit_efficiency(Protocol::Dicke, n, q).unwrap();
            assert!(g > p && p > d);
            let nf = n as f64;
            assert!((g / p - 2.0 * nf / (nf - 1.0)).abs() < 1e-12);
            assert!((p / d - 2.0 * (nf - 1.0) / nf).abs() < 1e-12);
        }
    }

    #[test]
    fn two_parties() {
        let g = qubit_efficiency(Protocol::Ghz, 2, 100).unwrap();
        let d = qubit_efficiency(Protocol::Dicke, 2, 100).unwrap();
        assert_eq!(g, 200.0);
        assert_eq!(d, 50.0);
    }
}
