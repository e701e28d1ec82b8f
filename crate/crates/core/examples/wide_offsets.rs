//! Offsets beyond the sine-only window: the linearized config is rejected,
//! the two-quadrature estimator recovers them.

use qclocksync::estimation::EstimatorMode;
use qclocksync::experiments::{monte_carlo, ExperimentConfig};
use qclocksync::protocol::Protocol;

fn main() -> qclocksync::Result<()> {
    let wide = ExperimentConfig::new(Protocol::Pairs, 4, 8000).with_spread(1.2).with_trials(100).with_seed(3);
    match wide.validate() {
        Err(e) => println!("linearized: {e}"),
        Ok(()) => println!("linearized: accepted"),
    }
    let two = wide.with_estimator(EstimatorMode::TwoQuadrature);
    let s = monte_carlo(&two)?;
    println!(
        "two-quadrature: rms {:.4e}, per-trial prediction {:.4e}, ratio {:.3}, clamped {}",
        s.pooled.rms_error, s.pooled.analytic_stderr, s.pooled.ratio, s.clamped
    );
    Ok(())
}
