//! Secrecy metrics of the scheduled pinhole network.
//!
//! Two figures of merit are evaluated, each by more than one route:
//!
//! * average secrecy capacity (ASC), by nested Gauss-Hermite quadrature
//!   ([`asc_quadrature`]) and by the high-power closed form
//!   ([`asc_asymptotic`], [`asc_asymptotic_large_n`]);
//! * probability of intercept (POI), by quadrature ([`poi_quadrature`]) and
//!   by the closed form built on the exponential-quadratic Q approximation
//!   ([`poi_closed_form`]).
//!
//! The Monte Carlo estimators in [`crate::montecarlo`] provide the third,
//! independent route.

mod asymptotic;
mod quadrature;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::channel::PinholeTopology;
use crate::error::{config, domain, Result};
use crate::noise::{noise_events, NoiseParams};
use crate::special::{gauss_hermite_rule, QApproxParams, QuadratureRule, DEFAULT_QUADRATURE_ORDER};

pub use asymptotic::{
    asc_asymptotic, asc_asymptotic_large_n, asymptotic_constants, asymptotic_terms,
    poi_closed_form, AsymptoticConstants, AsymptoticTerms, DestinationConstants,
    EavesdropperConstants, MAX_CLOSED_FORM_DESTINATIONS,
};
pub use quadrature::{asc_quadrature, poi_quadrature};

/// A complete scenario: topology, noise at both receiver classes, transmit
/// power and the numerical settings of the analytical routes.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    pub topology: PinholeTopology,
    pub dest_noise: NoiseParams,
    pub eav_noise: NoiseParams,
    /// Transmit power `P`, in units of the noise variances.
    pub transmit_power: f64,
    pub quadrature: Arc<QuadratureRule>,
    pub q_approx: QApproxParams,
}

impl SystemConfig {
    /// Scenario with the default 64-point rule and standard Q constants.
    pub fn new(
        topology: PinholeTopology,
        dest_noise: NoiseParams,
        eav_noise: NoiseParams,
        transmit_power: f64,
    ) -> Result<Self> {
        let cfg = SystemConfig {
            topology,
            dest_noise,
            eav_noise,
            transmit_power,
            quadrature: Arc::new(gauss_hermite_rule(DEFAULT_QUADRATURE_ORDER)?),
            q_approx: QApproxParams::STANDARD,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.topology.n_destinations() == 0 {
            return Err(config("at least one destination is required"));
        }
        self.dest_noise.validate()?;
        self.eav_noise.validate()?;
        if !(self.transmit_power > 0.0) || !self.transmit_power.is_finite() {
            return Err(config(format!(
                "transmit power must be positive and finite, got {}",
                self.transmit_power
            )));
        }
        self.q_approx.validate()
    }

    pub fn with_transmit_power(mut self, power: f64) -> Result<Self> {
        self.transmit_power = power;
        self.validate()?;
        Ok(self)
    }

    /// Sets `P` from `10·log10 P`.
    pub fn with_transmit_power_db(self, power_db: f64) -> Result<Self> {
        self.with_transmit_power(10f64.powf(power_db / 10.0))
    }

    pub fn with_n_destinations(mut self, n: u32) -> Result<Self> {
        self.topology = self.topology.with_n_destinations(n)?;
        Ok(self)
    }

    pub fn with_pinhole(mut self, present: bool) -> Self {
        self.topology.pinhole_present = present;
        self
    }

    pub fn with_quadrature_order(mut self, order: usize) -> Result<Self> {
        self.quadrature = Arc::new(gauss_hermite_rule(order)?);
        Ok(self)
    }

    pub fn with_q_approx(mut self, params: QApproxParams) -> Result<Self> {
        params.validate()?;
        self.q_approx = params;
        Ok(self)
    }

    pub fn n_destinations(&self) -> u32 {
        self.topology.n_destinations()
    }
}

/// Which evaluation route produced a [`SecrecyResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Quadrature,
    Asymptotic,
    AsymptoticLargeN,
    #[serde(rename = "closed-form-poi")]
    ClosedForm,
    MonteCarlo,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::Asymptotic => "asymptotic",
            Method::AsymptoticLargeN => "asymptotic-large-n",
            Method::ClosedForm => "closed-form-poi",
            Method::MonteCarlo => "monte-carlo",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A metric value together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecrecyResult {
    /// ASC in bits per channel use, or POI as a probability.
    pub value: f64,
    pub method: Method,
    /// Confidence half-width; zero for analytical routes.
    pub ci_halfwidth: f64,
    /// Largest magnitude among the alternating binomial terms, in the
    /// units of `value`, when the route sums any. Values far above
    /// `|value|` signal cancellation.
    pub conditioning: Option<f64>,
}

impl SecrecyResult {
    pub(crate) fn analytical(value: f64, method: Method) -> Self {
        SecrecyResult {
            value,
            method,
            ci_halfwidth: 0.0,
            conditioning: None,
        }
    }
}

/// Secrecy capacity for one set of gains, averaged over the four noise
/// events with the positive-secrecy clamp applied per event.
pub fn instantaneous_secrecy_capacity(
    gain_a: f64,
    gain_n_star: f64,
    gain_e: f64,
    cfg: &SystemConfig,
) -> Result<f64> {
    for (name, g) in [("gain_a", gain_a), ("gain_n_star", gain_n_star), ("gain_e", gain_e)] {
        if !(g > 0.0) || !g.is_finite() {
            return Err(domain(format!("{name} must be positive and finite, got {g}")));
        }
    }
    let events = noise_events(&cfg.dest_noise, &cfg.eav_noise, cfg.transmit_power)?;
    let total = events
        .iter()
        .map(|ev| {
            let dest = (ev.alpha_b * gain_a * gain_n_star).ln_1p();
            let eav = (ev.alpha_e * gain_a * gain_e).ln_1p();
            ev.probability * ((dest - eav) / std::f64::consts::LN_2).max(0.0)
        })
        .sum();
    Ok(total)
}

/// Neumaier-compensated accumulator that also records the largest term.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    compensation: f64,
    max_abs: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
        self.max_abs = self.max_abs.max(x.abs());
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    pub(crate) fn max_abs(&self) -> f64 {
        self.max_abs
    }
}
