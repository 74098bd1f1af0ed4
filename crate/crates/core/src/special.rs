//! Gaussian special functions and Gauss-Hermite quadrature.
//!
//! Everything here works against the *standard normal* density
//! `φ(t) = exp(-t²/2)/√(2π)`. In particular [`QuadratureRule`] uses the
//! probabilists' normalization: its weights sum to one and
//! `Σ ωℓ f(θℓ) ≈ E[f(Z)]` for `Z ~ N(0, 1)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use crate::error::{config, domain, Error, Result};

/// 1/√(2π)
pub const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_677_939_946_059_934_381_868_5;

/// Largest supported Gauss-Hermite order.
pub const MAX_QUADRATURE_ORDER: usize = 200;

/// Default Gauss-Hermite order used by [`crate::metrics::SystemConfig`].
pub const DEFAULT_QUADRATURE_ORDER: usize = 64;

/// Gaussian tail probability `Q(t) = P(Z > t)`.
///
/// Evaluated through `erfc`, so the upper tail keeps full relative
/// precision until it underflows (around `t ≈ 38`).
pub fn q_function(t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(domain(format!("Q-function argument must be finite, got {t}")));
    }
    Ok(q(t))
}

#[inline]
pub(crate) fn q(t: f64) -> f64 {
    0.5 * libm::erfc(t * FRAC_1_SQRT_2)
}

/// Standard normal CDF, `Φ(t) = Q(-t)`.
#[inline]
pub(crate) fn phi(t: f64) -> f64 {
    q(-t)
}

/// `ln Φ(t)`, accurate in both tails.
#[inline]
pub(crate) fn ln_phi(t: f64) -> f64 {
    if t > 0.0 {
        (-q(t)).ln_1p()
    } else {
        q(-t).ln()
    }
}

/// `Φ(t)^n` computed in log space; `Φ(t)^0 = 1` for every `t`.
#[inline]
pub(crate) fn phi_pow(t: f64, n: u32) -> f64 {
    match n {
        0 => 1.0,
        1 => phi(t),
        _ => (f64::from(n) * ln_phi(t)).exp(),
    }
}

/// `1 - Φ(t)^n` without cancellation when `Φ(t)^n` is close to one.
#[inline]
pub(crate) fn one_minus_phi_pow(t: f64, n: u32) -> f64 {
    if n == 0 {
        0.0
    } else {
        -(f64::from(n) * ln_phi(t)).exp_m1()
    }
}

/// Upper-tail quantile: the `t` with `Q(t) = p`.
pub fn q_inverse(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(domain(format!("tail probability must lie in (0, 1), got {p}")));
    }
    // Bracket, then Newton with bisection fallback.
    let (mut lo, mut hi) = (-40.0_f64, 40.0_f64);
    let mut t = 0.0_f64;
    for _ in 0..200 {
        let f = q(t) - p;
        if f > 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let slope = -FRAC_1_SQRT_2PI * (-0.5 * t * t).exp();
        let mut next = t - f / slope;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if (next - t).abs() <= 1e-15 * (1.0 + t.abs()) {
            return Ok(next);
        }
        t = next;
    }
    Ok(t)
}

/// Fitting constants of the exponential-quadratic tail approximation
/// `Q(t) ≈ exp(-(k1 t² + k2 t + k3))`, `t ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QApproxParams {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
}

impl QApproxParams {
    /// The constants used throughout unless configured otherwise.
    pub const STANDARD: QApproxParams = QApproxParams {
        k1: 0.3842,
        k2: 0.7640,
        k3: 0.6964,
    };

    pub fn new(k1: f64, k2: f64, k3: f64) -> Result<Self> {
        let params = QApproxParams { k1, k2, k3 };
        params.validate()?;
        Ok(params)
    }

    /// Checks `k1 > 0` and that the exponent stays nonnegative on `t ≥ 0`,
    /// so the approximation is a probability there.
    pub fn validate(&self) -> Result<()> {
        let QApproxParams { k1, k2, k3 } = *self;
        if !(k1.is_finite() && k2.is_finite() && k3.is_finite()) {
            return Err(config("Q-approximation constants must be finite"));
        }
        if k1 <= 0.0 {
            return Err(config(format!("k1 must be positive, got {k1}")));
        }
        let vertex = -k2 / (2.0 * k1);
        let min_exponent = if vertex > 0.0 {
            k3 - k2 * k2 / (4.0 * k1)
        } else {
            k3
        };
        if min_exponent < 0.0 {
            return Err(config(format!(
                "Q-approximation exceeds one on t >= 0 (minimum exponent {min_exponent})"
            )));
        }
        Ok(())
    }
}

impl Default for QApproxParams {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// Exponential-quadratic approximation of `Q(t)`, valid for `t ≥ 0` only.
///
/// Negative arguments must be reflected by the caller through
/// `Q(-t) = 1 - Q(t)`.
pub fn q_approx(t: f64, params: &QApproxParams) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(domain(format!(
            "Q approximation is only valid for finite t >= 0, got {t}"
        )));
    }
    Ok((-(params.k1 * t * t + params.k2 * t + params.k3)).exp())
}

/// Gauss-Hermite rule normalized to the standard normal density.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Abscissas, in increasing order.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// `Σ ωℓ f(θℓ)`; fails on the first node where `f` is not finite.
    pub fn expect<F>(&self, mut f: F) -> Result<f64>
    where
        F: FnMut(f64) -> f64,
    {
        let mut acc = 0.0;
        for (theta, w) in self.iter() {
            let v = f(theta);
            if !v.is_finite() {
                return Err(Error::Evaluation(format!(
                    "integrand is {v} at quadrature node {theta}"
                )));
            }
            acc += w * v;
        }
        Ok(acc)
    }
}

/// Builds the `order`-point Gauss-Hermite rule.
///
/// Roots of the physicists' Hermite polynomial are refined by Newton
/// iteration with deflation on the orthonormal three-term recurrence, then
/// mapped to the probabilists' normalization (nodes × √2, weights ÷ √π). Exact for
/// polynomials up to degree `2·order − 1`.
pub fn gauss_hermite_rule(order: usize) -> Result<QuadratureRule> {
    if order == 0 || order > MAX_QUADRATURE_ORDER {
        return Err(config(format!(
            "quadrature order must lie in 1..={MAX_QUADRATURE_ORDER}, got {order}"
        )));
    }
    let n = order;
    let nf = n as f64;
    let pim4 = PI.powf(-0.25);
    let mut x = vec![0.0_f64; n];
    let mut w = vec![0.0_f64; n];

    for i in 0..n.div_ceil(2) {
        // Start above the largest root not yet found; with those found
        // deflated, Newton then converges monotonically onto it.
        let mut z = if i == 0 {
            (2.0 * nf + 1.0).sqrt()
        } else {
            x[i - 1] * (1.0 + 1e-4) + 1e-4
        };
        let mut derivative = 0.0;
        for _ in 0..200 {
            let (mut p1, mut p2) = (pim4, 0.0_f64);
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
            }
            derivative = (2.0 * nf).sqrt() * p2;
            let pole: f64 = x[..i].iter().map(|r| 1.0 / (z - r)).sum();
            let step = p1 / (derivative - p1 * pole);
            z -= step;
            if step.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        if n % 2 == 1 && i == n / 2 {
            z = 0.0;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        let weight = 2.0 / (derivative * derivative);
        w[i] = weight;
        w[n - 1 - i] = weight;
    }

    let inv_sqrt_pi = 1.0 / PI.sqrt();
    let mut nodes: Vec<f64> = x.iter().map(|v| v * SQRT_2).collect();
    let mut weights: Vec<f64> = w.iter().map(|v| v * inv_sqrt_pi).collect();
    nodes.reverse();
    weights.reverse();
    Ok(QuadratureRule { nodes, weights })
}

/// `E[f(Z)]` for a standard normal `Z`, approximated by `rule`.
pub fn expect_standard_normal<F>(f: F, rule: &QuadratureRule) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    rule.expect(f)
}

/// The four truncated integrals of `g(t) = exp(-(a t − b)²/2)/√(2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentIntegrals {
    /// `∫_{-∞}^0 g(t) dt`
    pub neg: f64,
    /// `∫_{-∞}^0 t g(t) dt`
    pub neg_t: f64,
    /// `∫_0^∞ g(t) dt`
    pub pos: f64,
    /// `∫_0^∞ t g(t) dt`
    pub pos_t: f64,
}

/// Closed forms of the half-axis Gaussian integrals, `a > 0`.
pub fn gaussian_segment_integrals(a: f64, b: f64) -> Result<SegmentIntegrals> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain(format!("scale a must be positive and finite, got {a}")));
    }
    if !b.is_finite() {
        return Err(domain(format!("shift b must be finite, got {b}")));
    }
    Ok(segment_integrals(a, b))
}

#[inline]
pub(crate) fn segment_integrals(a: f64, b: f64) -> SegmentIntegrals {
    let tail = q(b);
    let body = phi(b);
    let density = FRAC_1_SQRT_2PI * (-0.5 * b * b).exp();
    let a2 = a * a;
    SegmentIntegrals {
        neg: tail / a,
        neg_t: -density / a2 + b * tail / a2,
        pos: body / a,
        pos_t: density / a2 + b * body / a2,
    }
}
