//! Parsing the key = value config format and running it.

use qclocksync::cli::parse_config_str;
use qclocksync::experiments::monte_carlo;

const CONFIG: &str = "\
# Dicke state, eight parties
protocol = dicke
n = 8
k = 5000
trials = 60
seed = 12
spread = 0.2
";

fn main() -> qclocksync::Result<()> {
    let config = parse_config_str(CONFIG)?;
    println!("{config:?}");
    let s = monte_carlo(&config)?;
    for p in &s.parties {
        println!("party {}: rms {:.4e} ratio {:.3}", p.party, p.stats.rms_error, p.stats.ratio);
    }
    match parse_config_str("protocol = dicke\nn = 7\nk = 10\nseed = 1\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
