//! Closed forms built on `Q(t) ≈ exp(-(K1 t² + K2 t + K3))`, `t ≥ 0`.
//!
//! Every integrand below is a polynomial of degree ≤ 1 in `t` times a power
//! of `Q` times the Gaussian density. Splitting the axis at zero, applying
//! the approximation on the side where the Q argument is positive, and
//! expanding `(1 − exp(·))^n` binomially turns each piece into one of the
//! four half-axis integrals of `exp(-(A t − B)²/2)/√(2π)`; see
//! [`crate::special::gaussian_segment_integrals`].
//!
//! Index conventions: `j` is the destination noise state, `k` the
//! eavesdropper noise state, `n` the binomial index.

use std::f64::consts::LN_2;

use super::{CompensatedSum, Method, SecrecyResult, SystemConfig};
use crate::error::{config, Error, Result};
use crate::noise::{noise_events_tilde, NoiseEvent, NoiseState};
use crate::special::{segment_integrals, QApproxParams};

/// Largest `N` accepted by the alternating binomial sums.
pub const MAX_CLOSED_FORM_DESTINATIONS: u32 = 1000;

/// Rounding error of an alternating sum, per unit of its largest term.
/// Fitted to the observed breakdown; each term carries a few ulps from
/// `exp`, `erfc` and the running binomial coefficient.
const TERM_ROUNDING: f64 = 8.0 * f64::EPSILON;

/// Estimated rounding error above which the closed-form ASC is rejected,
/// in bits per channel use.
pub const ASC_ROUNDING_LIMIT: f64 = 1e-2;

/// Estimated rounding error above which the closed-form POI is rejected,
/// relative to the POI itself.
pub const POI_ROUNDING_LIMIT: f64 = 0.05;

/// Destination-side constants for binomial index `n`:
/// `A = √(2nK1 + 1)`, `B = nK2/A`, `B̄ = −B`, `C = 2nK3`,
/// `D = exp(−(C − B²)/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DestinationConstants {
    pub a: f64,
    pub b: f64,
    pub b_bar: f64,
    pub c: f64,
    pub d: f64,
}

impl DestinationConstants {
    pub fn new(n: u32, k: &QApproxParams) -> Self {
        let nf = f64::from(n);
        let a = (2.0 * nf * k.k1 + 1.0).sqrt();
        let b = nf * k.k2 / a;
        let c = 2.0 * nf * k.k3;
        DestinationConstants {
            a,
            b,
            b_bar: -b,
            c,
            d: (-0.5 * (c - b * b)).exp(),
        }
    }
}

/// Eavesdropper-side constants for binomial index `n`, given `φe` and
/// `λ_kje`:
/// `A = √(2nK1 + 1/φe²)`, `B = (nK2 + λ/φe²)/A`, `B̄ = (−nK2 + λ/φe²)/A`,
/// `C = 2nK3 + λ²/φe²`, `D = exp(−(C − B²)/2)`, `D̄ = exp(−(C − B̄²)/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EavesdropperConstants {
    pub a: f64,
    pub b: f64,
    pub b_bar: f64,
    pub c: f64,
    pub d: f64,
    pub d_bar: f64,
}

impl EavesdropperConstants {
    pub fn new(n: u32, phi_e: f64, lambda: f64, k: &QApproxParams) -> Self {
        let nf = f64::from(n);
        let inv_phi2 = 1.0 / (phi_e * phi_e);
        let a = (2.0 * nf * k.k1 + inv_phi2).sqrt();
        let b = (nf * k.k2 + lambda * inv_phi2) / a;
        let b_bar = (-nf * k.k2 + lambda * inv_phi2) / a;
        let c = 2.0 * nf * k.k3 + lambda * lambda * inv_phi2;
        EavesdropperConstants {
            a,
            b,
            b_bar,
            c,
            d: (-0.5 * (c - b * b)).exp(),
            d_bar: (-0.5 * (c - b_bar * b_bar)).exp(),
        }
    }
}

/// All constants for one `(j, k, n)` triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticConstants {
    /// `φe = s_e/s_b`
    pub phi_e: f64,
    /// `λ_kje = (m_e − m_b + ln(α̃_ke/α̃_jb))/s_b`
    pub lambda_kje: f64,
    pub destination: DestinationConstants,
    pub eavesdropper: EavesdropperConstants,
}

/// Per-event pieces of the asymptotic ASC, in bits per channel use.
///
/// `eav_pos + eav_neg` is the eavesdropper's log-capacity averaged over
/// the region where the scheduled destination is *weaker*; it is removed
/// from `eav_zero` to leave the eavesdropper's share of the secrecy region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticTerms {
    pub dest_pos: f64,
    pub dest_neg: f64,
    pub eav_zero: f64,
    pub eav_pos: f64,
    pub eav_neg: f64,
    /// Largest binomial term seen in the alternating sums, in bits per
    /// channel use.
    pub max_term: f64,
}

impl AsymptoticTerms {
    /// High-power secrecy capacity of the event.
    pub fn total(&self) -> f64 {
        (self.dest_pos + self.dest_neg) - (self.eav_zero - (self.eav_pos + self.eav_neg))
    }

    /// The large-`N`, `m_b ≫ m_e` reduction.
    pub fn large_n(&self) -> f64 {
        self.dest_neg - self.eav_zero
    }
}

struct EventGeometry {
    phi_e: f64,
    lambda: f64,
    /// `ln α̃_jb + m_b`
    c_b: f64,
    /// `ln α̃_ke + m_e`
    c_e: f64,
    s_b: f64,
    s_e: f64,
}

fn geometry(cfg: &SystemConfig, ev: &NoiseEvent) -> EventGeometry {
    let links = cfg.topology.effective_links();
    let (b, e) = (links.destination, links.eavesdropper);
    EventGeometry {
        phi_e: e.s() / b.s(),
        lambda: (e.m() - b.m() + ev.alpha_e.ln() - ev.alpha_b.ln()) / b.s(),
        c_b: ev.alpha_b.ln() + b.m(),
        c_e: ev.alpha_e.ln() + e.m(),
        s_b: b.s(),
        s_e: e.s(),
    }
}

fn event_for(cfg: &SystemConfig, j: NoiseState, k: NoiseState) -> NoiseEvent {
    noise_events_tilde(&cfg.dest_noise, &cfg.eav_noise)
        .into_iter()
        .find(|ev| ev.dest_state == j && ev.eav_state == k)
        .expect("all four events are always present")
}

/// Constants of the closed forms for event `(j, k)` and binomial index `n`.
pub fn asymptotic_constants(
    cfg: &SystemConfig,
    j: NoiseState,
    k: NoiseState,
    n: u32,
) -> AsymptoticConstants {
    let g = geometry(cfg, &event_for(cfg, j, k));
    AsymptoticConstants {
        phi_e: g.phi_e,
        lambda_kje: g.lambda,
        destination: DestinationConstants::new(n, &cfg.q_approx),
        eavesdropper: EavesdropperConstants::new(n, g.phi_e, g.lambda, &cfg.q_approx),
    }
}

fn check_n(n: u32) -> Result<()> {
    if n > MAX_CLOSED_FORM_DESTINATIONS {
        return Err(config(format!(
            "closed forms support at most {MAX_CLOSED_FORM_DESTINATIONS} destinations, got {n}"
        )));
    }
    Ok(())
}

/// Running binomial coefficients `C(m, 0), C(m, 1), …` with alternating sign.
fn signed_binomials(m: u32) -> impl Iterator<Item = (u32, f64)> {
    let mut coef = 1.0_f64;
    (0..=m).map(move |n| {
        let current = coef;
        coef *= f64::from(m - n) / f64::from(n + 1);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        (n, sign * current)
    })
}

/// Asymptotic terms of event `(j, k)`.
pub fn asymptotic_terms(cfg: &SystemConfig, j: NoiseState, k: NoiseState) -> Result<AsymptoticTerms> {
    cfg.validate()?;
    let n_dest = cfg.n_destinations();
    check_n(n_dest)?;
    Ok(terms_for_event(cfg, &event_for(cfg, j, k)))
}

fn terms_for_event(cfg: &SystemConfig, ev: &NoiseEvent) -> AsymptoticTerms {
    let g = geometry(cfg, ev);
    let kq = &cfg.q_approx;
    let n_dest = cfg.n_destinations();
    let nf = f64::from(n_dest);

    // destination: t < 0 uses Q(−t)^{N−1} ≈ exp(−(N−1)(K1t² − K2t + K3))
    let top = DestinationConstants::new(n_dest - 1, kq);
    let seg = segment_integrals(top.a, top.b);
    let dest_pos = nf * top.d * (g.c_b * seg.neg + g.s_b * seg.neg_t) / LN_2;

    // t > 0 expands (1 − Q(t))^{N−1} binomially
    let mut dest_sum = CompensatedSum::default();
    for (n, coef) in signed_binomials(n_dest - 1) {
        let dc = DestinationConstants::new(n, kq);
        let seg = segment_integrals(dc.a, dc.b_bar);
        dest_sum.add(coef * dc.d * (g.c_b * seg.pos + g.s_b * seg.pos_t));
    }
    let dest_neg = nf * dest_sum.value() / LN_2;

    let eav_zero = g.c_e / LN_2;

    // eavesdropper, after u = φe t + λ: linear factor c' + (s_e/φe) u
    let c_shift = g.c_e - g.s_e * g.lambda / g.phi_e;
    let slope = g.s_e / g.phi_e;
    let top = EavesdropperConstants::new(n_dest, g.phi_e, g.lambda, kq);
    let seg = segment_integrals(top.a, top.b);
    let eav_pos = top.d * (c_shift * seg.neg + slope * seg.neg_t) / (g.phi_e * LN_2);

    let mut eav_sum = CompensatedSum::default();
    for (n, coef) in signed_binomials(n_dest) {
        let ec = EavesdropperConstants::new(n, g.phi_e, g.lambda, kq);
        let seg = segment_integrals(ec.a, ec.b_bar);
        eav_sum.add(coef * ec.d_bar * (c_shift * seg.pos + slope * seg.pos_t));
    }
    let eav_neg = eav_sum.value() / (g.phi_e * LN_2);

    AsymptoticTerms {
        dest_pos,
        dest_neg,
        eav_zero,
        eav_pos,
        eav_neg,
        max_term: (nf * dest_sum.max_abs()).max(eav_sum.max_abs() / g.phi_e) / LN_2,
    }
}

fn cancellation(cfg: &SystemConfig, rounding: f64, unit: &str) -> Error {
    Error::Evaluation(format!(
        "alternating binomial sum cancels catastrophically at N = {}: \
         estimated rounding error {rounding:.1e} {unit}; use quadrature",
        cfg.n_destinations()
    ))
}

fn weighted_terms<F>(cfg: &SystemConfig, method: Method, pick: F) -> Result<SecrecyResult>
where
    F: Fn(&AsymptoticTerms) -> f64,
{
    cfg.validate()?;
    check_n(cfg.n_destinations())?;
    let mut total = 0.0;
    let mut max_term = 0.0_f64;
    for ev in noise_events_tilde(&cfg.dest_noise, &cfg.eav_noise).iter() {
        if ev.probability == 0.0 {
            continue;
        }
        let terms = terms_for_event(cfg, ev);
        total += ev.probability * pick(&terms);
        max_term = max_term.max(terms.max_term);
    }
    let rounding = TERM_ROUNDING * max_term;
    if !total.is_finite() || rounding > ASC_ROUNDING_LIMIT {
        return Err(cancellation(cfg, rounding, "bpcu"));
    }
    Ok(SecrecyResult {
        value: total,
        method,
        ci_halfwidth: 0.0,
        conditioning: Some(max_term),
    })
}

/// High-power ASC in closed form. Independent of `P` and of `γa`.
pub fn asc_asymptotic(cfg: &SystemConfig) -> Result<SecrecyResult> {
    weighted_terms(cfg, Method::Asymptotic, AsymptoticTerms::total)
}

/// Reduced asymptote keeping only the terms that survive large `N` when
/// `m_b ≫ m_e`.
pub fn asc_asymptotic_large_n(cfg: &SystemConfig) -> Result<SecrecyResult> {
    weighted_terms(cfg, Method::AsymptoticLargeN, AsymptoticTerms::large_n)
}

/// POI in closed form:
/// `Σ δδ/φe · (D^(N) Q(B^(N))/A^(N) + Σ_n C(N,n)(−1)^n D̄^(n) (1 − Q(B̄^(n)))/A^(n))`.
pub fn poi_closed_form(cfg: &SystemConfig) -> Result<SecrecyResult> {
    cfg.validate()?;
    let n_dest = cfg.n_destinations();
    check_n(n_dest)?;
    let mut total = 0.0;
    let mut max_term = 0.0_f64;
    for ev in noise_events_tilde(&cfg.dest_noise, &cfg.eav_noise).iter() {
        if ev.probability == 0.0 {
            continue;
        }
        let g = geometry(cfg, ev);
        let top = EavesdropperConstants::new(n_dest, g.phi_e, g.lambda, &cfg.q_approx);
        let below = top.d * segment_integrals(top.a, top.b).neg;
        let mut above = CompensatedSum::default();
        for (n, coef) in signed_binomials(n_dest) {
            let ec = EavesdropperConstants::new(n, g.phi_e, g.lambda, &cfg.q_approx);
            above.add(coef * ec.d_bar * segment_integrals(ec.a, ec.b_bar).pos);
        }
        total += ev.probability * (below + above.value()) / g.phi_e;
        max_term = max_term.max(above.max_abs() / g.phi_e);
    }
    let rounding = TERM_ROUNDING * max_term;
    if !total.is_finite() || rounding > POI_ROUNDING_LIMIT * total.abs() {
        return Err(cancellation(cfg, rounding, "in probability"));
    }
    Ok(SecrecyResult {
        value: total,
        method: Method::ClosedForm,
        ci_halfwidth: 0.0,
        conditioning: Some(max_term),
    })
}
