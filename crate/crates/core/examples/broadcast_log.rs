//! Broadcast log round trip: write a trial's outcomes, read them back, and
//! re-estimate from two halves merged together.

use qclocksync::estimation::{estimate_ghz_adjustments, EstimatorMode};
use qclocksync::experiments::{run_trial_with_log, ExperimentConfig};
use qclocksync::protocol::{enumerate_sequences, replay, BroadcastLog, Protocol};

fn main() -> qclocksync::Result<()> {
    let k = 600;
    let config = ExperimentConfig::new(Protocol::Ghz, 4, k).with_seed(5);
    let outcome = run_trial_with_log(&config, 0)?;
    let text = outcome.log.expect("log kept").to_text();
    for line in text.lines().take(6) {
        println!("{line}");
    }
    println!("... {} lines", text.lines().count());

    let log = BroadcastLog::parse(&text)?;
    let (a, b) = log.records().split_at(log.len() / 2);
    let mut first = BroadcastLog::new();
    first.extend(a.iter().cloned());
    let mut second = BroadcastLog::new();
    second.extend(b.iter().cloned());
    let mut acc = replay(&first)?;
    acc.merge(&replay(&second)?);

    let report = estimate_ghz_adjustments(&acc, &enumerate_sequences(4)?, config.omega, EstimatorMode::Linearized, k)?;
    assert_eq!(report.estimates(), outcome.report.estimates());
    println!("replayed estimates {:?}", report.estimates());
    println!("online estimates   {:?}", outcome.report.estimates());
    Ok(())
}
