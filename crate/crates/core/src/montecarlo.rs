//! Brute-force estimators of ASC and POI.
//!
//! Nothing here touches the quadrature or closed-form code: every trial
//! draws the shared gain, `N` destination hops, the eavesdropper hop and
//! one noise state per receiver class, then evaluates the definition
//! directly.
//!
//! Trials are grouped into fixed blocks of [`BLOCK_TRIALS`]. Block `i`
//! draws each random variable from its own ChaCha stream, keyed by
//! `(seed, i, variable)`, and the per-block partial sums are merged in
//! block order by pairwise summation. The estimate therefore depends only
//! on `(seed, samples)`: the worker count changes wall time, not bits.
//! Because variables never share a stream, two scenarios run with the same
//! seed see common random numbers (e.g. with and without the pinhole).

use std::f64::consts::LN_2;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{sample_best_gain, sample_gain};
use crate::error::{config, Error, Result};
use crate::metrics::{Method, SecrecyResult, SystemConfig};
use crate::noise::{alpha_factors, alpha_factors_tilde, sample_noise_state};
use crate::special::q_inverse;

/// Trials per deterministic work unit.
pub const BLOCK_TRIALS: u64 = 1 << 14;

/// Minimum trial count for the normal-approximation interval.
pub const MIN_SAMPLES: u64 = 10_000;

const STREAMS_PER_BLOCK: u64 = 8;

#[derive(Debug, Clone, Copy)]
enum Stream {
    Source = 0,
    Destination = 1,
    Eavesdropper = 2,
    DestNoise = 3,
    EavNoise = 4,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    /// Two-sided confidence level of the reported interval.
    pub confidence: f64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            samples: 1_000_000,
            seed: 0,
            workers: 1,
            confidence: 0.99,
        }
    }
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Result<Self> {
        let mc = McConfig {
            samples,
            seed,
            ..Default::default()
        };
        mc.validate()?;
        Ok(mc)
    }

    pub fn with_workers(mut self, workers: usize) -> Result<Self> {
        self.workers = workers;
        self.validate()?;
        Ok(self)
    }

    pub fn with_confidence(mut self, confidence: f64) -> Result<Self> {
        self.confidence = confidence;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < MIN_SAMPLES {
            return Err(config(format!(
                "at least {MIN_SAMPLES} Monte Carlo samples are required, got {}",
                self.samples
            )));
        }
        if self.workers == 0 {
            return Err(config("worker count must be positive"));
        }
        if !(self.confidence > 0.5 && self.confidence < 1.0) {
            return Err(config(format!(
                "confidence must lie in (0.5, 1), got {}",
                self.confidence
            )));
        }
        Ok(())
    }

    /// Normal quantile `z` with two-sided coverage `confidence`.
    pub fn z_score(&self) -> f64 {
        q_inverse(0.5 * (1.0 - self.confidence)).expect("confidence validated")
    }
}

fn stream(seed: u64, block: u64, which: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block * STREAMS_PER_BLOCK + which as u64);
    rng
}

/// Per-block sums of the trial values and their squares.
#[derive(Debug, Clone, Copy, Default)]
struct Partial {
    sum: f64,
    sum_sq: f64,
}

fn pairwise_sum(parts: &[Partial]) -> Partial {
    match parts.len() {
        0 => Partial::default(),
        1 => parts[0],
        len => {
            let (l, r) = parts.split_at(len / 2);
            let (l, r) = (pairwise_sum(l), pairwise_sum(r));
            Partial {
                sum: l.sum + r.sum,
                sum_sq: l.sum_sq + r.sum_sq,
            }
        }
    }
}

/// Draws of one trial.
#[derive(Debug, Clone, Copy)]
struct Trial {
    gain_a: f64,
    gain_best: f64,
    gain_e: f64,
    dest_impulse: bool,
    eav_impulse: bool,
}

struct Streams {
    source: ChaCha8Rng,
    dest: ChaCha8Rng,
    eav: ChaCha8Rng,
    dest_noise: ChaCha8Rng,
    eav_noise: ChaCha8Rng,
}

impl Streams {
    fn new(seed: u64, block: u64) -> Self {
        Streams {
            source: stream(seed, block, Stream::Source),
            dest: stream(seed, block, Stream::Destination),
            eav: stream(seed, block, Stream::Eavesdropper),
            dest_noise: stream(seed, block, Stream::DestNoise),
            eav_noise: stream(seed, block, Stream::EavNoise),
        }
    }

    fn draw(&mut self, cfg: &SystemConfig) -> Trial {
        let links = cfg.topology.effective_links();
        let gain_a = links.source.map_or(1.0, |a| sample_gain(&a, &mut self.source));
        let gain_best =
            sample_best_gain(&links.destination, cfg.n_destinations(), &mut self.dest);
        let gain_e = sample_gain(&links.eavesdropper, &mut self.eav);
        use crate::noise::NoiseState::Impulsive;
        Trial {
            gain_a,
            gain_best,
            gain_e,
            dest_impulse: sample_noise_state(&cfg.dest_noise, &mut self.dest_noise) == Impulsive,
            eav_impulse: sample_noise_state(&cfg.eav_noise, &mut self.eav_noise) == Impulsive,
        }
    }
}

fn run_blocks<F>(cfg: &SystemConfig, mc: &McConfig, trial_value: F) -> Result<(f64, f64)>
where
    F: Fn(&Trial) -> f64 + Sync,
{
    cfg.validate()?;
    mc.validate()?;
    let blocks = mc.samples.div_ceil(BLOCK_TRIALS);
    let run_block = |block: u64| -> Result<Partial> {
        let mut streams = Streams::new(mc.seed, block);
        let start = block * BLOCK_TRIALS;
        let end = (start + BLOCK_TRIALS).min(mc.samples);
        let mut part = Partial::default();
        for index in start..end {
            let v = trial_value(&streams.draw(cfg));
            if !v.is_finite() {
                return Err(Error::Evaluation(format!("trial {index} produced {v}")));
            }
            part.sum += v;
            part.sum_sq += v * v;
        }
        Ok(part)
    };

    let parts: Vec<Partial> = if mc.workers == 1 {
        (0..blocks).map(run_block).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(mc.workers)
            .build()
            .map_err(|e| config(format!("cannot start worker pool: {e}")))?;
        pool.install(|| (0..blocks).into_par_iter().map(run_block).collect::<Result<_>>())?
    };
    let total = pairwise_sum(&parts);
    Ok((total.sum, total.sum_sq))
}

/// Monte Carlo ASC with the clamp applied to each realized noise state.
pub fn mc_asc(cfg: &SystemConfig, mc: &McConfig) -> Result<SecrecyResult> {
    let ab = alpha_factors(cfg.transmit_power, &cfg.dest_noise)?;
    let ae = alpha_factors(cfg.transmit_power, &cfg.eav_noise)?;
    let (sum, sum_sq) = run_blocks(cfg, mc, |t| {
        let alpha_b = if t.dest_impulse { ab.impulsive } else { ab.background };
        let alpha_e = if t.eav_impulse { ae.impulsive } else { ae.background };
        let dest = (alpha_b * t.gain_a * t.gain_best).ln_1p();
        let eav = (alpha_e * t.gain_a * t.gain_e).ln_1p();
        ((dest - eav) / LN_2).max(0.0)
    })?;
    let n = mc.samples as f64;
    let mean = sum / n;
    let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
    Ok(SecrecyResult {
        value: mean,
        method: Method::MonteCarlo,
        ci_halfwidth: mc.z_score() * (var / n).sqrt(),
        conditioning: None,
    })
}

/// Monte Carlo POI: frequency of `α_jb γa γn* < α_ke γa γe`.
///
/// `P` and `γa` multiply both sides, so the comparison is made on
/// `α̃_jb γn*` against `α̃_ke γe`; trial outcomes are identical for every
/// transmit power.
pub fn mc_poi(cfg: &SystemConfig, mc: &McConfig) -> Result<SecrecyResult> {
    let ab = alpha_factors_tilde(&cfg.dest_noise);
    let ae = alpha_factors_tilde(&cfg.eav_noise);
    let (hits, _) = run_blocks(cfg, mc, |t| {
        let alpha_b = if t.dest_impulse { ab.impulsive } else { ab.background };
        let alpha_e = if t.eav_impulse { ae.impulsive } else { ae.background };
        if alpha_b * t.gain_best < alpha_e * t.gain_e {
            1.0
        } else {
            0.0
        }
    })?;
    let n = mc.samples as f64;
    let p = hits / n;
    Ok(SecrecyResult {
        value: p,
        method: Method::MonteCarlo,
        ci_halfwidth: mc.z_score() * (p * (1.0 - p) / n).sqrt(),
        conditioning: None,
    })
}

/// Draws `count` trials from block 0 of `seed` and reports, per trial,
/// whether the eavesdropper out-performs the scheduled destination.
pub fn intercept_outcomes(cfg: &SystemConfig, seed: u64, count: usize) -> Result<Vec<bool>> {
    cfg.validate()?;
    let ab = alpha_factors(cfg.transmit_power, &cfg.dest_noise)?;
    let ae = alpha_factors(cfg.transmit_power, &cfg.eav_noise)?;
    let mut streams = Streams::new(seed, 0);
    Ok((0..count)
        .map(|_| {
            let t = streams.draw(cfg);
            let alpha_b = if t.dest_impulse { ab.impulsive } else { ab.background };
            let alpha_e = if t.eav_impulse { ae.impulsive } else { ae.background };
            alpha_b * t.gain_a * t.gain_best < alpha_e * t.gain_a * t.gain_e
        })
        .collect())
}
