//! Bernoulli-Gaussian impulsive noise.
//!
//! Each receiving node sees background Gaussian noise of variance `ε²W`,
//! plus, with probability `p`, an impulsive component of variance `η·ε²W`.
//! Destination and eavesdropper draw their impulse indicators
//! independently, which gives four joint events.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{config, Result};

/// Noise statistics of one node class (all destinations share one set).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseParams {
    /// Background noise variance `ε²W`.
    pub background_var: f64,
    /// Impulsive-to-background power ratio `η`.
    pub impulse_ratio: f64,
    /// Probability `p` that an impulse hits a transmission.
    pub impulse_prob: f64,
}

impl NoiseParams {
    pub fn new(background_var: f64, impulse_ratio: f64, impulse_prob: f64) -> Result<Self> {
        let params = NoiseParams {
            background_var,
            impulse_ratio,
            impulse_prob,
        };
        params.validate()?;
        Ok(params)
    }

    /// Unit background variance, no impulses.
    pub fn gaussian() -> Self {
        NoiseParams {
            background_var: 1.0,
            impulse_ratio: 0.0,
            impulse_prob: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.background_var > 0.0) || !self.background_var.is_finite() {
            return Err(config(format!(
                "background variance must be positive, got {}",
                self.background_var
            )));
        }
        if !(self.impulse_ratio >= 0.0) || !self.impulse_ratio.is_finite() {
            return Err(config(format!(
                "impulse ratio must be nonnegative, got {}",
                self.impulse_ratio
            )));
        }
        if !(0.0..=1.0).contains(&self.impulse_prob) {
            return Err(config(format!(
                "impulse probability must lie in [0, 1], got {}",
                self.impulse_prob
            )));
        }
        Ok(())
    }

    /// Effective noise variance in the given state.
    pub fn variance(&self, state: NoiseState) -> f64 {
        match state {
            NoiseState::Background => self.background_var,
            NoiseState::Impulsive => self.background_var * (1.0 + self.impulse_ratio),
        }
    }

    /// Probability of the given state.
    pub fn state_prob(&self, state: NoiseState) -> f64 {
        match state {
            NoiseState::Background => 1.0 - self.impulse_prob,
            NoiseState::Impulsive => self.impulse_prob,
        }
    }
}

/// Noise state of a node for one transmission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseState {
    /// Background noise only (index 1).
    Background,
    /// Background plus impulsive noise (index 2).
    Impulsive,
}

impl NoiseState {
    pub const ALL: [NoiseState; 2] = [NoiseState::Background, NoiseState::Impulsive];

    /// 1 for background only, 2 with an impulse.
    pub fn index(self) -> u8 {
        match self {
            NoiseState::Background => 1,
            NoiseState::Impulsive => 2,
        }
    }
}

/// Transmit-power-to-noise ratios `(α1, α2)` of one node class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaFactors {
    /// `α1 = P/ε²W`
    pub background: f64,
    /// `α2 = P/(ε²W (1 + η))`
    pub impulsive: f64,
}

impl AlphaFactors {
    pub fn get(&self, state: NoiseState) -> f64 {
        match state {
            NoiseState::Background => self.background,
            NoiseState::Impulsive => self.impulsive,
        }
    }
}

pub fn alpha_factors(power: f64, noise: &NoiseParams) -> Result<AlphaFactors> {
    if !(power > 0.0) || !power.is_finite() {
        return Err(config(format!("transmit power must be positive, got {power}")));
    }
    let background = power / noise.background_var;
    Ok(AlphaFactors {
        background,
        impulsive: background / (1.0 + noise.impulse_ratio),
    })
}

/// Power-free factors `α̃ = α/P`.
pub fn alpha_factors_tilde(noise: &NoiseParams) -> AlphaFactors {
    let background = 1.0 / noise.background_var;
    AlphaFactors {
        background,
        impulsive: background / (1.0 + noise.impulse_ratio),
    }
}

/// One of the four joint noise events.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseEvent {
    /// State at the scheduled destination (`j`).
    pub dest_state: NoiseState,
    /// State at the eavesdropper (`k`).
    pub eav_state: NoiseState,
    /// `δ_{j,b} δ_{k,e}`
    pub probability: f64,
    pub alpha_b: f64,
    pub alpha_e: f64,
}

/// The four joint events, ordered (1,1), (1,2), (2,1), (2,2).
///
/// Events of zero probability are kept so the list always has four
/// entries.
pub fn noise_events(
    dest: &NoiseParams,
    eav: &NoiseParams,
    power: f64,
) -> Result<[NoiseEvent; 4]> {
    let ab = alpha_factors(power, dest)?;
    let ae = alpha_factors(power, eav)?;
    Ok(build_events(dest, eav, ab, ae))
}

/// The four joint events with power-free factors `α̃`.
pub fn noise_events_tilde(dest: &NoiseParams, eav: &NoiseParams) -> [NoiseEvent; 4] {
    build_events(dest, eav, alpha_factors_tilde(dest), alpha_factors_tilde(eav))
}

fn build_events(
    dest: &NoiseParams,
    eav: &NoiseParams,
    ab: AlphaFactors,
    ae: AlphaFactors,
) -> [NoiseEvent; 4] {
    let event = |j: NoiseState, k: NoiseState| NoiseEvent {
        dest_state: j,
        eav_state: k,
        probability: dest.state_prob(j) * eav.state_prob(k),
        alpha_b: ab.get(j),
        alpha_e: ae.get(k),
    };
    use NoiseState::{Background as B, Impulsive as I};
    [event(B, B), event(B, I), event(I, B), event(I, I)]
}

/// Bernoulli draw of a node's noise state.
pub fn sample_noise_state<R: Rng + ?Sized>(noise: &NoiseParams, rng: &mut R) -> NoiseState {
    if rng.random_bool(noise.impulse_prob) {
        NoiseState::Impulsive
    } else {
        NoiseState::Background
    }
}
