//! One synchronization run per protocol against the same hidden offsets.

use qclocksync::estimation::recenter_to_standard_clock;
use qclocksync::experiments::{run_trial, ExperimentConfig};
use qclocksync::protocol::Protocol;

fn main() -> qclocksync::Result<()> {
    let offsets = vec![0.04, -0.11, 0.02, 0.07];
    for protocol in Protocol::ALL {
        let k = 12_000;
        let config = ExperimentConfig::new(protocol, 4, k).with_offsets(offsets.clone()).with_seed(42);
        let report = run_trial(&config, 0)?;
        println!("{protocol} ({:?} reference, {} qubits)", report.reference, report.qubits);
        for p in &report.parties {
            println!(
                "  party {}: estimate {:+.5}  truth {:+.5}  ±{:.5}",
                p.party,
                p.estimate,
                p.truth.unwrap_or(f64::NAN),
                p.analytic_stderr
            );
        }
        let against_zero = recenter_to_standard_clock(&report, 0)?;
        println!("  relative to party 0: {:?}", against_zero.estimates().iter().map(|e| format!("{e:+.4}")).collect::<Vec<_>>());
    }
    Ok(())
}
