//! Accuracy per qubit for N in {2, 4, 6, 8}, written as the sweep CSV.

use qclocksync::experiments::{efficiency_sweep, write_sweep_csv, ExperimentConfig};
use qclocksync::protocol::Protocol;

fn main() -> qclocksync::Result<()> {
    let base = ExperimentConfig::new(Protocol::Ghz, 2, 1).with_trials(100).with_seed(9);
    let rows = efficiency_sweep(&base, &[2, 4, 6, 8], 33_600, &Protocol::ALL)?;
    write_sweep_csv(&rows, None, std::io::stdout().lock())?;
    Ok(())
}
