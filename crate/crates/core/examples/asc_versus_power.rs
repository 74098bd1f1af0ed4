//! ASC against transmit power, with and without the pinhole, and the
//! high-power asymptote it saturates to.

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
    let base = SystemConfig::new(topo, noise, noise, 1.0)?;
    let asymptote = asc_asymptotic(&base)?;
    let large_n = asc_asymptotic_large_n(&base)?;

    println!("{:>6} {:>10} {:>10}", "P dB", "pinhole", "direct");
    for p_db in (0..=12).map(|i| f64::from(i) * 10.0) {
        let cfg = base.clone().with_transmit_power_db(p_db)?;
        let ph = asc_quadrature(&cfg)?.value;
        let direct = asc_quadrature(&cfg.with_pinhole(false))?.value;
        println!("{p_db:>6} {ph:>10.4} {direct:>10.4}");
    }
    println!(
        "asymptote {:.4} bpcu (large-N form {:.4}), largest binomial term {:.1e}",
        asymptote.value,
        large_n.value,
        asymptote.conditioning.unwrap_or(0.0)
    );
    Ok(())
}
