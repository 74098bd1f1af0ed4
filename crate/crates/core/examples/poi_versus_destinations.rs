//! Probability of intercept against the number of destinations, by
//! quadrature, in closed form and by simulation.

use plc_secrecy::prelude::*;

fn main() -> Result<()> {
    let noise = NoiseParams::new(1.0, 10.0, 0.1)?;
    let topo = PinholeTopology::new(
        LinkParams::from_db(-20.0, 6.0)?,
        LinkParams::from_db(-20.0, 6.0)?,
        LinkParams::from_db(-40.0, 6.0)?,
        1,
        true,
    )?;
    let base = SystemConfig::new(topo, noise, noise, 1.0)?;
    let mc = McConfig::new(1_000_000, 42)?;

    println!("{:>3} {:>12} {:>12} {:>12} {:>10}", "N", "quadrature", "closed", "simulated", "ci");
    for n in [1, 2, 4, 8, 16, 32] {
        let cfg = base.clone().with_n_destinations(n)?;
        let q = poi_quadrature(&cfg)?.value;
        let c = poi_closed_form(&cfg)?.value;
        let m = mc_poi(&cfg, &mc)?;
        println!("{n:>3} {q:>12.4e} {c:>12.4e} {:>12.4e} {:>10.1e}", m.value, m.ci_halfwidth);
    }

    // The closed form refuses N where its alternating sums lose all digits.
    match poi_closed_form(&base.with_n_destinations(100)?) {
        Ok(r) => println!("N=100 closed form: {:.4e}", r.value),
        Err(e) => println!("N=100 closed form: {e}"),
    }
    Ok(())
}
