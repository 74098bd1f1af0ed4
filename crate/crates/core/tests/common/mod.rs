//! Shared helpers for the integration tests: an adaptive Gauss-Kronrod
//! integrator used as an independent oracle, and scenario builders.

#![allow(dead_code)]

use plc_secrecy::prelude::*;

// 15-point Kronrod abscissas on [0, 1] (symmetric), with the 7-point
// Gauss weights for the embedded rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive G7-K15 on a finite interval to absolute tolerance `tol`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (v, err) = kronrod(f, a, b);
        if err <= tol || depth == 0 {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, 0.5 * tol, depth - 1) + rec(f, m, b, 0.5 * tol, depth - 1)
    }
    rec(&mut f, a, b, tol, 40)
}

/// `∫_{-∞}^{∞} f`, through `t = u/(1−u²)`.
pub fn integrate_line<F: FnMut(f64) -> f64>(mut f: F, tol: f64) -> f64 {
    integrate(
        |u| {
            let d = 1.0 - u * u;
            if d <= 0.0 {
                return 0.0;
            }
            let v = f(u / d) * (1.0 + u * u) / (d * d);
            if v.is_finite() { v } else { 0.0 }
        },
        -1.0,
        1.0,
        tol,
    )
}

/// `∫_a^∞ f`, through `t = a + u/(1−u)`.
pub fn integrate_from<F: FnMut(f64) -> f64>(a: f64, mut f: F, tol: f64) -> f64 {
    integrate(
        |u| {
            let d = 1.0 - u;
            if d <= 0.0 {
                return 0.0;
            }
            let v = f(a + u / d) / (d * d);
            if v.is_finite() { v } else { 0.0 }
        },
        0.0,
        1.0,
        tol,
    )
}

/// Standard normal density.
pub fn normal_pdf(t: f64) -> f64 {
    (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Standard normal CDF from the library's Q-function.
pub fn normal_cdf(t: f64) -> f64 {
    if t.is_nan() {
        return f64::NAN;
    }
    q_function(-t.clamp(-1e3, 1e3)).unwrap()
}

/// Scenario with all links at `s = 6 dB`, given means and noise.
#[derive(Clone, Copy)]
pub struct Setup {
    pub m_a: f64,
    pub s_a: f64,
    pub m_b: f64,
    pub s_b: f64,
    pub m_e: f64,
    pub s_e: f64,
    pub n: u32,
    pub pinhole: bool,
    pub dest_noise: NoiseParams,
    pub eav_noise: NoiseParams,
    pub power_db: f64,
}

impl Default for Setup {
    /// The base scenario of the ASC figures.
    fn default() -> Self {
        let noise = NoiseParams::new(1.0, 10.0, 0.1).unwrap();
        Setup {
            m_a: -20.0,
            s_a: 6.0,
            m_b: -20.0,
            s_b: 6.0,
            m_e: -40.0,
            s_e: 6.0,
            n: 10,
            pinhole: true,
            dest_noise: noise,
            eav_noise: noise,
            power_db: 30.0,
        }
    }
}

impl Setup {
    pub fn build(&self) -> SystemConfig {
        let topo = PinholeTopology::new(
            LinkParams::from_db(self.m_a, self.s_a).unwrap(),
            LinkParams::from_db(self.m_b, self.s_b).unwrap(),
            LinkParams::from_db(self.m_e, self.s_e).unwrap(),
            self.n,
            self.pinhole,
        )
        .unwrap();
        SystemConfig::new(topo, self.dest_noise, self.eav_noise, 1.0)
            .unwrap()
            .with_transmit_power_db(self.power_db)
            .unwrap()
    }
}
