//! Fringe error for registers far past full reconstruction: the error of a
//! single sequence's time difference stays at 1/(ω√k) whatever N is.

use qclocksync::experiments::large_n_fringe_scaling;

fn main() -> qclocksync::Result<()> {
    let k = 4000;
    println!("{:>5} {:>12} {:>12} {:>7}", "N", "rms", "1/(w sqrt k)", "ratio");
    for n in [10, 50, 200, 1000] {
        let s = large_n_fringe_scaling(n, k, 200, 1.0, 17)?;
        println!("{n:>5} {:>12.4e} {:>12.4e} {:>7.3}", s.rms_error, s.analytic_stderr, s.ratio);
    }
    Ok(())
}
