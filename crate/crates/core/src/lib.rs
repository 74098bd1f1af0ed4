//! Physical-layer security of pinhole-based power-line networks.
//!
//! A source reaches `N` destinations and one eavesdropper through a shared
//! pinhole. Every link gain is log-normal, every receiver suffers
//! Bernoulli-Gaussian impulsive noise, and the source schedules the
//! destination with the strongest pinhole-to-destination link. This crate
//! evaluates the average secrecy capacity (ASC) and the probability of
//! intercept (POI) of that scheme three ways:
//!
//! * Gauss-Hermite quadrature of the exact expressions,
//! * closed-form high-power / Q-approximation formulas,
//! * Monte Carlo simulation with confidence intervals.
//!
//! ```
//! use plc_secrecy::prelude::*;
//!
//! let source = LinkParams::from_db(-20.0, 6.0)?;
//! let dest = LinkParams::from_db(-20.0, 6.0)?;
//! let eav = LinkParams::from_db(-40.0, 6.0)?;
//! let topo = PinholeTopology::new(source, dest, eav, 10, true)?;
//! let noise = NoiseParams::new(1.0, 10.0, 0.1)?;
//! let cfg = SystemConfig::new(topo, noise, noise, 1e4)?;
//!
//! let asc = asc_quadrature(&cfg)?;
//! let poi = poi_quadrature(&cfg)?;
//! assert!(asc.value > 0.0);
//! assert!(poi.value > 0.0 && poi.value < 1.0);
//! # Ok::<(), plc_secrecy::Error>(())
//! ```
//!
//! Units: link parameters are natural-log domain internally
//! ([`LinkParams::from_db`] uses `ξ = ln(10)/10`); transmit power is
//! relative to the noise variances, which default to one.

pub mod channel;
pub mod error;
pub mod metrics;
pub mod montecarlo;
pub mod noise;
pub mod special;
pub mod sweep;

pub use channel::{LinkParams, PinholeTopology};
pub use error::{Error, Result};
pub use metrics::{Method, SecrecyResult, SystemConfig};
pub use montecarlo::McConfig;
pub use noise::NoiseParams;

pub mod prelude {
    pub use crate::channel::{
        best_destination_cdf, best_destination_pdf, lognormal_cdf, lognormal_mean,
        lognormal_pdf, LinkParams, PinholeTopology,
    };
    pub use crate::error::{Error, Result};
    pub use crate::metrics::{
        asc_asymptotic, asc_asymptotic_large_n, asc_quadrature, poi_closed_form,
        poi_quadrature, Method, SecrecyResult, SystemConfig,
    };
    pub use crate::montecarlo::{mc_asc, mc_poi, McConfig};
    pub use crate::noise::{NoiseParams, NoiseState};
    pub use crate::special::{gauss_hermite_rule, q_function, QApproxParams};
}
