//! Log-normal link statistics and the pinhole topology.
//!
//! Link gains are log-normal: `ln γ ~ N(m, s²)` with `(m, s)` stored in the
//! natural-log domain. Parameters quoted in dB are mapped with the
//! shadowing convention `ξ = ln(10)/10` applied to both the mean and the
//! standard deviation of `10·log10 γ`.

use std::f64::consts::LN_10;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{config, domain, Result};
use crate::special::{phi, phi_pow, FRAC_1_SQRT_2PI};

/// dB-to-neper factor for power quantities, `ln(10)/10`.
pub const DB_TO_NATURAL: f64 = LN_10 / 10.0;

/// Parameters of one log-normal link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkParams {
    m: f64,
    s: f64,
}

impl LinkParams {
    pub fn new(m: f64, s: f64) -> Result<Self> {
        if !m.is_finite() {
            return Err(config(format!("link mean must be finite, got {m}")));
        }
        if !(s > 0.0) || !s.is_finite() {
            return Err(config(format!(
                "link standard deviation must be positive and finite, got {s}"
            )));
        }
        Ok(LinkParams { m, s })
    }

    /// Builds a link from the mean and standard deviation of `10·log10 γ`.
    pub fn from_db(m_db: f64, s_db: f64) -> Result<Self> {
        if !(s_db > 0.0) {
            return Err(config(format!(
                "link standard deviation must be positive, got {s_db} dB"
            )));
        }
        Self::new(m_db * DB_TO_NATURAL, s_db * DB_TO_NATURAL)
    }

    /// Inverse of [`LinkParams::from_db`].
    pub fn to_db(&self) -> (f64, f64) {
        (self.m / DB_TO_NATURAL, self.s / DB_TO_NATURAL)
    }

    /// Mean of `ln γ`.
    pub fn m(&self) -> f64 {
        self.m
    }

    /// Standard deviation of `ln γ`.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// The same distribution scaled by `exp(shift)`.
    pub(crate) fn shifted(&self, shift: f64) -> LinkParams {
        LinkParams {
            m: self.m + shift,
            s: self.s,
        }
    }

    #[inline]
    pub(crate) fn standardize(&self, x: f64) -> f64 {
        (x.ln() - self.m) / self.s
    }
}

/// Builds a link from dB parameters. Alias of [`LinkParams::from_db`].
pub fn link_params_from_db(m_db: f64, s_db: f64) -> Result<LinkParams> {
    LinkParams::from_db(m_db, s_db)
}

fn check_positive(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("argument must be positive and finite, got {x}")))
    }
}

pub fn lognormal_pdf(x: f64, link: &LinkParams) -> Result<f64> {
    check_positive(x)?;
    Ok(pdf(x, link))
}

#[inline]
fn pdf(x: f64, link: &LinkParams) -> f64 {
    let z = link.standardize(x);
    FRAC_1_SQRT_2PI * (-0.5 * z * z).exp() / (x * link.s)
}

/// `1 − Q((ln x − m)/s)`.
pub fn lognormal_cdf(x: f64, link: &LinkParams) -> Result<f64> {
    check_positive(x)?;
    Ok(phi(link.standardize(x)))
}

/// `E[γ] = exp(m + s²/2)`.
pub fn lognormal_mean(link: &LinkParams) -> f64 {
    (link.m + 0.5 * link.s * link.s).exp()
}

/// Source, destination and eavesdropper links joined at a pinhole.
///
/// End-to-end gains are `γa·γn` towards destination `n` and `γa·γe`
/// towards the eavesdropper. With `pinhole_present = false` the shared
/// factor is fixed to one and the remaining links absorb its mean; see
/// [`PinholeTopology::effective_links`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinholeTopology {
    pub source_link: LinkParams,
    pub destination_link: LinkParams,
    pub eavesdropper_link: LinkParams,
    n_destinations: u32,
    pub pinhole_present: bool,
}

/// Link statistics seen by the metric evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveLinks {
    /// Shared source link; `None` when the shared gain is fixed to one.
    pub source: Option<LinkParams>,
    pub destination: LinkParams,
    pub eavesdropper: LinkParams,
}

impl PinholeTopology {
    pub fn new(
        source_link: LinkParams,
        destination_link: LinkParams,
        eavesdropper_link: LinkParams,
        n_destinations: u32,
        pinhole_present: bool,
    ) -> Result<Self> {
        if n_destinations == 0 {
            return Err(config("at least one destination is required"));
        }
        Ok(PinholeTopology {
            source_link,
            destination_link,
            eavesdropper_link,
            n_destinations,
            pinhole_present,
        })
    }

    pub fn n_destinations(&self) -> u32 {
        self.n_destinations
    }

    pub fn with_n_destinations(mut self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(config("at least one destination is required"));
        }
        self.n_destinations = n;
        Ok(self)
    }

    /// Links used for evaluation.
    ///
    /// With the pinhole this is the stored triple. Without it, `γa ≡ 1`
    /// and both remaining links are scaled by `E[γa] = exp(ma + sa²/2)`
    /// (their log-means grow by `ma + sa²/2`), so every end-to-end link
    /// keeps the same average gain as in the pinhole system.
    pub fn effective_links(&self) -> EffectiveLinks {
        if self.pinhole_present {
            EffectiveLinks {
                source: Some(self.source_link),
                destination: self.destination_link,
                eavesdropper: self.eavesdropper_link,
            }
        } else {
            let src = self.source_link;
            let shift = src.m + 0.5 * src.s * src.s;
            EffectiveLinks {
                source: None,
                destination: self.destination_link.shifted(shift),
                eavesdropper: self.eavesdropper_link.shifted(shift),
            }
        }
    }
}

/// CDF of the best of `N` i.i.d. destination hops, `F(x)^N`.
pub fn best_destination_cdf(x: f64, topo: &PinholeTopology) -> Result<f64> {
    check_positive(x)?;
    let z = topo.destination_link.standardize(x);
    Ok(phi_pow(z, topo.n_destinations))
}

/// PDF of the best destination hop, `N F(x)^{N−1} f(x)`.
pub fn best_destination_pdf(x: f64, topo: &PinholeTopology) -> Result<f64> {
    check_positive(x)?;
    let link = &topo.destination_link;
    let n = topo.n_destinations;
    let z = link.standardize(x);
    Ok(f64::from(n) * phi_pow(z, n - 1) * pdf(x, link))
}

/// One draw of `exp(m + s·Z)`.
pub fn sample_gain<R: Rng + ?Sized>(link: &LinkParams, rng: &mut R) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    (link.m + link.s * z).exp()
}

/// Largest of `n` i.i.d. draws from `link`.
///
/// Consumes exactly `n` normals; the maximum is taken in the Gaussian
/// domain, where `exp` is monotone, so a single exponential is needed.
pub fn sample_best_gain<R: Rng + ?Sized>(link: &LinkParams, n: u32, rng: &mut R) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for _ in 0..n {
        let z: f64 = rng.sample(StandardNormal);
        best = best.max(z);
    }
    (link.m + link.s * best).exp()
}
