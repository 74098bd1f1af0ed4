//! Distribution of the strongest of N log-normal destination gains.

use plc_secrecy::channel::sample_best_gain;
use plc_secrecy::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let source = LinkParams::from_db(-20.0, 6.0)?;
    let dest = LinkParams::from_db(-20.0, 6.0)?;
    let eav = LinkParams::from_db(-40.0, 6.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = 0.5 * lognormal_mean(&dest);

    println!("{:>4} {:>12} {:>12}", "N", "P(best<x)", "sampled");
    for n in [1, 2, 4, 10, 40] {
        let topo = PinholeTopology::new(source, dest, eav, n, true)?;
        let analytic = best_destination_cdf(x, &topo)?;
        let trials = 200_000;
        let below = (0..trials)
            .filter(|_| sample_best_gain(&dest, n, &mut rng) < x)
            .count();
        println!("{n:>4} {analytic:>12.6} {:>12.6}", below as f64 / f64::from(trials));
    }
    Ok(())
}
