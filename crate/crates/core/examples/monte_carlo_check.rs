//! Simulated ASC with confidence intervals. Results are bit-identical for
//! any worker count because every block of trials owns its random stream.

use std::time::Instant;

use plc_secrecy::prelude::*;

fn main() -> Result<()> {
    let noise = NoiseParams::new(1.0, 10.0, 0.1)?;
    let topo = PinholeTopology::new(
        LinkParams::from_db(-20.0, 6.0)?,
        LinkParams::from_db(-20.0, 6.0)?,
        LinkParams::from_db(-40.0, 6.0)?,
        10,
        true,
    )?;
    let cfg = SystemConfig::new(topo, noise, noise, 1.0)?.with_transmit_power_db(30.0)?;
    let exact = asc_quadrature(&cfg)?.value;
    println!("quadrature {exact:.5}");

    for samples in [100_000, 400_000, 1_600_000] {
        let start = Instant::now();
        let mc = McConfig::new(samples, 7)?.with_confidence(0.99)?;
        let r = mc_asc(&cfg, &mc)?;
        println!(
            "{samples:>9} trials: {:.5} ± {:.5} ({:.2?})",
            r.value,
            r.ci_halfwidth,
            start.elapsed()
        );
    }

    let mc = McConfig::new(100_000, 7)?;
    let serial = mc_asc(&cfg, &mc)?.value;
    let parallel = mc_asc(&cfg, &mc.with_workers(4)?)?.value;
    println!("1 vs 4 workers identical: {}", serial.to_bits() == parallel.to_bits());
    Ok(())
}
