use std::f64::consts::LN_2;

use super::{Method, SecrecyResult, SystemConfig};
use crate::error::{Error, Result};
use crate::noise::{noise_events, noise_events_tilde};
use crate::special::{one_minus_phi_pow, phi, phi_pow};

/// ASC by nested Gauss-Hermite quadrature.
///
/// For every noise event `(j, k)` and every outer node standing for the
/// shared gain `γa`, the destination and eavesdropper averages are
///
/// ```text
/// I_jkn(x) = E_t[ log2(1 + α_jb x e^{s_b t + m_b}) · N Φ(t)^{N−1}
///                 · Φ((s_b t + m_b + ln(α_jb/α_ke) − m_e)/s_e) ]
/// I_kje(x) = E_t[ log2(1 + α_ke x e^{s_e t + m_e})
///                 · (1 − Φ((s_e t + m_e + ln(α_ke/α_jb) − m_b)/s_b)^N) ]
/// ```
///
/// The positive-secrecy clamp is carried by the CDF factors, so the
/// returned value is not clamped; a negative result means the rule is too
/// coarse for the scenario.
pub fn asc_quadrature(cfg: &SystemConfig) -> Result<SecrecyResult> {
    cfg.validate()?;
    let links = cfg.topology.effective_links();
    let (b, e) = (links.destination, links.eavesdropper);
    let n = cfg.n_destinations();
    let rule = &*cfg.quadrature;

    let outer: Vec<(f64, f64)> = match links.source {
        Some(a) => rule.iter().map(|(t, w)| ((a.m() + a.s() * t).exp(), w)).collect(),
        None => vec![(1.0, 1.0)],
    };

    let events = noise_events(&cfg.dest_noise, &cfg.eav_noise, cfg.transmit_power)?;
    let tilde = noise_events_tilde(&cfg.dest_noise, &cfg.eav_noise);

    let mut total = 0.0;
    for (ev, evt) in events.iter().zip(tilde.iter()) {
        if ev.probability == 0.0 {
            continue;
        }
        // ln(α_jb/α_ke), taken from the power-free factors
        let ln_ratio = evt.alpha_b.ln() - evt.alpha_e.ln();

        // (gain at node, weight · conditional probability factor)
        let dest_terms: Vec<(f64, f64)> = rule
            .iter()
            .map(|(t, w)| {
                let y = b.s() * t + b.m();
                let order = f64::from(n) * phi_pow(t, n - 1);
                let eav_below = phi((y + ln_ratio - e.m()) / e.s());
                (y.exp(), w * order * eav_below)
            })
            .collect();
        let eav_terms: Vec<(f64, f64)> = rule
            .iter()
            .map(|(t, w)| {
                let z = e.s() * t + e.m();
                let dest_above = one_minus_phi_pow((z - ln_ratio - b.m()) / b.s(), n);
                (z.exp(), w * dest_above)
            })
            .collect();

        let mut event_sum = 0.0;
        for (l, &(x, wa)) in outer.iter().enumerate() {
            let i_dest: f64 = dest_terms
                .iter()
                .map(|&(g, w)| w * (ev.alpha_b * x * g).ln_1p())
                .sum();
            let i_eav: f64 = eav_terms
                .iter()
                .map(|&(g, w)| w * (ev.alpha_e * x * g).ln_1p())
                .sum();
            let diff = (i_dest - i_eav) / LN_2;
            if !diff.is_finite() {
                return Err(Error::Evaluation(format!(
                    "ASC term (j={}, k={}, l={l}) is {diff}",
                    ev.dest_state.index(),
                    ev.eav_state.index(),
                )));
            }
            event_sum += wa * diff;
        }
        total += ev.probability * event_sum;
    }
    Ok(SecrecyResult::analytical(total, Method::Quadrature))
}

/// POI by Gauss-Hermite quadrature,
/// `Σ δ_jb δ_ke · E_t[Φ(φ_e t + λ_kje)^N]`.
///
/// Only the ratio `α_ke/α_jb` enters, and it is formed from the power-free
/// factors, so the value does not depend on `P` at all.
pub fn poi_quadrature(cfg: &SystemConfig) -> Result<SecrecyResult> {
    cfg.validate()?;
    let links = cfg.topology.effective_links();
    let (b, e) = (links.destination, links.eavesdropper);
    let n = cfg.n_destinations();
    let phi_e = e.s() / b.s();

    let mut total = 0.0;
    for ev in noise_events_tilde(&cfg.dest_noise, &cfg.eav_noise).iter() {
        if ev.probability == 0.0 {
            continue;
        }
        let lambda = (e.m() - b.m() + ev.alpha_e.ln() - ev.alpha_b.ln()) / b.s();
        let p = cfg.quadrature.expect(|t| phi_pow(phi_e * t + lambda, n))?;
        total += ev.probability * p;
    }
    Ok(SecrecyResult::analytical(total.clamp(0.0, 1.0), Method::Quadrature))
}
