//! Q-function, its exponential approximation, and the Gauss-Hermite rule.

use plc_secrecy::prelude::*;
use plc_secrecy::special::{gaussian_segment_integrals, q_approx, q_inverse};

fn main() -> Result<()> {
    let k = QApproxParams::STANDARD;
    println!("{:>5} {:>14} {:>14} {:>9}", "t", "Q(t)", "approx", "rel err");
    for t in [0.0, 0.5, 1.0, 2.0, 3.0, 5.0] {
        let exact = q_function(t)?;
        let approx = q_approx(t, &k)?;
        println!("{t:>5.1} {exact:>14.6e} {approx:>14.6e} {:>9.3}", (approx - exact) / exact);
    }
    println!("Q(37) = {:.4e}, Q^-1(1e-6) = {:.6}", q_function(37.0)?, q_inverse(1e-6)?);

    // E[Z^4] = 3 is exact for any rule of order >= 3
    let rule = gauss_hermite_rule(8)?;
    let fourth = rule.expect(|z| z.powi(4))?;
    println!("8-point rule: E[Z^4] = {fourth:.15}");

    let s = gaussian_segment_integrals(2.0, 1.0)?;
    println!(
        "segments at a=2, b=1: neg {:.6} neg_t {:.6} pos {:.6} pos_t {:.6}",
        s.neg, s.neg_t, s.pos, s.pos_t
    );
    Ok(())
}
