//! Parity fringe of a balanced GHZ state as one measurement angle is swept.

use qclocksync::engine::{build_ghz_state, outcome_distribution, sample_ghz_closed_form, MeasurementAngles};
use qclocksync::protocol::DistributionSequence;
use qclocksync::seed::stream_rng;

fn main() -> qclocksync::Result<()> {
    let seq = DistributionSequence::from_flags(vec![0, 1, 1, 0, 1, 0])?;
    let state = build_ghz_state(&seq, 16)?;
    let mut rng = stream_rng(7, 0);
    let shots = 20_000;

    println!("{:>7} {:>10} {:>10} {:>10}", "theta0", "exact", "sampled", "cos(phi)");
    for step in 0..=12 {
        let theta0 = step as f64 * std::f64::consts::PI / 6.0;
        let mut theta = vec![0.1, -0.2, 0.05, 0.3, 0.0, -0.1];
        theta[0] += theta0;
        let angles = MeasurementAngles::new(theta.clone())?;

        let probs = outcome_distribution(&state, &angles)?;
        let exact: f64 = probs
            .iter()
            .enumerate()
            .map(|(x, p)| if x.count_ones() % 2 == 0 { *p } else { -p })
            .sum();
        let sampled = (0..shots)
            .map(|_| sample_ghz_closed_form(&seq, &angles, &mut rng).map(|o| f64::from(o.product())))
            .sum::<qclocksync::Result<f64>>()?
            / shots as f64;
        let phi: f64 = theta.iter().enumerate().map(|(i, t)| seq.sign(i) * t).sum();
        println!("{theta0:>7.3} {exact:>10.5} {sampled:>10.5} {:>10.5}", phi.cos());
    }
    Ok(())
}
