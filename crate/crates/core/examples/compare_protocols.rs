//! Monte Carlo accuracy of the three protocols for the same qubit budget.

use qclocksync::estimation::qubit_efficiency;
use qclocksync::experiments::{monte_carlo, ExperimentConfig};
use qclocksync::protocol::Protocol;

fn main() -> qclocksync::Result<()> {
    let n = 6;
    let q = 60_000;
    println!("N = {n}, Q = {q}");
    for protocol in Protocol::ALL {
        let k = q / protocol.qubits_per_round(n);
        let summary = monte_carlo(&ExperimentConfig::new(protocol, n, k).with_trials(200).with_seed(1))?;
        println!(
            "{:<6} k={k:<6} rms={:.4e} predicted={:.4e} accuracy {:>8.1} (closed form {:>8.1})  {:.2}s",
            protocol.name(),
            summary.pooled.rms_error,
            summary.closed_form_stderr,
            summary.empirical_accuracy(),
            qubit_efficiency(protocol, n, q)?,
            summary.wall_time_secs
        );
    }
    Ok(())
}
