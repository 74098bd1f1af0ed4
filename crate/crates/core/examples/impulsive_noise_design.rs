//! Choosing the impulsive-to-background ratio at each receiver: a noisy
//! eavesdropper helps only when impulses are frequent.

use plc_secrecy::prelude::*;

fn asc_at(eta_b: f64, eta_e: f64, p: f64) -> Result<f64> {
    let topo = PinholeTopology::new(
        LinkParams::from_db(-20.0, 6.0)?,
        LinkParams::from_db(-20.0, 6.0)?,
        LinkParams::from_db(-40.0, 6.0)?,
        10,
        true,
    )?;
    let cfg = SystemConfig::new(
        topo,
        NoiseParams::new(1.0, eta_b, p)?,
        NoiseParams::new(1.0, eta_e, p)?,
        1.0,
    )?
    .with_transmit_power_db(40.0)?;
    Ok(asc_quadrature(&cfg)?.value)
}

fn main() -> Result<()> {
    println!("{:>5} {:>14} {:>14} {:>8}", "p", "eta_e > eta_b", "eta_b > eta_e", "gain");
    for p in [0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0] {
        let good = asc_at(10.0, 100.0, p)?;
        let bad = asc_at(100.0, 10.0, p)?;
        println!("{p:>5.1} {good:>14.4} {bad:>14.4} {:>8.4}", good - bad);
    }
    Ok(())
}
