//! Two-qubit correlations of the symmetric Dicke state, exact and sampled.

use qclocksync::engine::{
    build_dicke_state, dicke_pair_correlation, dicke_visibility, outcome_distribution, sample_dicke_pair,
    MeasurementAngles, OutcomeString,
};
use qclocksync::seed::stream_rng;

fn main() -> qclocksync::Result<()> {
    let mut rng = stream_rng(3, 0);
    let delta = 0.4;
    println!("{:>3} {:>10} {:>12} {:>12} {:>12}", "N", "V", "statevector", "closed form", "marginal");
    for n in [2, 4, 6, 8, 10] {
        let state = build_dicke_state(n, 16)?;
        let mut theta = vec![0.0; n];
        theta[1] = delta;
        let probs = outcome_distribution(&state, &MeasurementAngles::new(theta)?)?;
        let exact: f64 = probs
            .iter()
            .enumerate()
            .map(|(x, p)| {
                let o = OutcomeString::from_index(x, n);
                p * f64::from(o.as_slice()[0] * o.as_slice()[1])
            })
            .sum();
        let shots = 50_000;
        let mut sum = 0i64;
        for _ in 0..shots {
            let (a, b) = sample_dicke_pair(n, 0.0, delta, &mut rng)?;
            sum += i64::from(a * b);
        }
        println!(
            "{n:>3} {:>10.6} {exact:>12.6} {:>12.6} {:>12.6}",
            dicke_visibility(n)?,
            dicke_pair_correlation(n, delta)?,
            sum as f64 / shots as f64
        );
    }
    Ok(())
}
