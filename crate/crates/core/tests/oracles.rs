//! Values checked against independent oracles: high-precision constants
//! (frozen from 40-digit evaluations), adaptive Gauss-Kronrod integration,
//! central differences and sampling.

mod common;

use std::f64::consts::{E, LN_2, PI};

use common::{integrate, integrate_from, integrate_line, normal_cdf, normal_pdf, Setup};
use plc_secrecy::channel::{sample_best_gain, sample_gain};
use plc_secrecy::metrics::asymptotic_terms;
use plc_secrecy::noise::{sample_noise_state, NoiseState};
use plc_secrecy::prelude::*;
use plc_secrecy::special::{
    expect_standard_normal, gaussian_segment_integrals, q_approx, q_inverse,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// Q(t) at 40 digits, rounded.
const Q_TABLE: [(f64, f64); 6] = [
    (1.0, 0.158_655_253_931_457_051_41),
    (3.0, 1.349_898_031_630_094_526_7e-3),
    (5.0, 2.866_515_718_791_939_116_7e-7),
    (10.0, 7.619_853_024_160_526_066e-24),
    (20.0, 2.753_624_118_606_233_695_1e-89),
    (37.0, 5.725_571_222_524_576_822_7e-300),
];

#[test]
fn q_function_against_high_precision_values() {
    for (t, want) in Q_TABLE {
        let got = q_function(t).unwrap();
        assert!(((got - want) / want).abs() < 1e-13, "Q({t}) = {got}, want {want}");
        let upper = q_function(-t).unwrap();
        assert!((got + upper - 1.0).abs() < 1e-14);
    }
    let far = q_function(40.0).unwrap();
    assert!((0.0..1e-300).contains(&far));
}

#[test]
fn q_inverse_recovers_tail_points() {
    for (t, p) in Q_TABLE.iter().take(4) {
        let back = q_inverse(*p).unwrap();
        assert!((back - t).abs() < 1e-9 * t, "{back} vs {t}");
    }
}

#[test]
fn eighth_moment_with_twenty_points() {
    let rule = gauss_hermite_rule(20).unwrap();
    let m8 = expect_standard_normal(|t| t.powi(8), &rule).unwrap();
    assert!((m8 - 105.0).abs() < 1e-9, "{m8}");
}

#[test]
fn lognormal_mean_identity_by_quadrature() {
    let rule = gauss_hermite_rule(40).unwrap();
    for (m, s) in [(0.0, 0.5), (-1.0, 1.0), (0.3, 2.0)] {
        let got = expect_standard_normal(|t| (s * t + m).exp(), &rule).unwrap();
        let want = f64::exp(m + 0.5 * s * s);
        assert!((got - want).abs() < 1e-8 * want.max(1.0), "m={m} s={s}: {got} vs {want}");
    }
}

#[test]
fn expected_square_of_normal_cdf_is_a_third() {
    let rule = gauss_hermite_rule(64).unwrap();
    let gh = expect_standard_normal(|t| normal_cdf(t).powi(2), &rule).unwrap();
    let adaptive = integrate_line(|t| normal_cdf(t).powi(2) * normal_pdf(t), 1e-13);
    assert!((gh - 1.0 / 3.0).abs() < 1e-6, "{gh}");
    assert!((adaptive - 1.0 / 3.0).abs() < 1e-10, "{adaptive}");
}

#[test]
fn segment_integrals_at_two_one() {
    // 40-digit adaptive quadrature of the four integrals at a=2, b=1.
    let want = [
        0.079_327_626_965_728_525_707,
        -0.020_828_867_646_921_574_596,
        0.420_672_373_034_271_474_29,
        0.270_828_867_646_921_574_6,
    ];
    let s = gaussian_segment_integrals(2.0, 1.0).unwrap();
    for (got, want) in [s.neg, s.neg_t, s.pos, s.pos_t].into_iter().zip(want) {
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
}

#[test]
fn segment_integrals_half_normal_mean() {
    let s = gaussian_segment_integrals(1.0, 0.0).unwrap();
    assert!((s.pos_t - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-15);
    assert!(gaussian_segment_integrals(0.0, 1.0).is_err());
}

#[test]
fn q_approx_envelope_on_zero_to_five() {
    let k = QApproxParams::STANDARD;
    let (mut worst_rel, mut worst_abs, mut worst_rel_core) = (0.0_f64, 0.0_f64, 0.0_f64);
    for i in 0..=500 {
        let t = 0.01 * f64::from(i);
        let exact = q_function(t).unwrap();
        let err = (q_approx(t, &k).unwrap() - exact).abs();
        worst_abs = worst_abs.max(err);
        worst_rel = worst_rel.max(err / exact);
        if t <= 2.5 {
            worst_rel_core = worst_rel_core.max(err / exact);
        }
    }
    // k1 < 1/2, so the relative error grows without bound in the far tail.
    println!("Q approximation on [0, 5]: max abs {worst_abs:.3e}, max rel {worst_rel:.3}");
    assert!(worst_abs < 2e-3);
    assert!(worst_rel_core < 0.08);
    assert!(worst_rel > 1.0);
    let at_two = (q_approx(2.0, &k).unwrap() / q_function(2.0).unwrap() - 1.0).abs();
    assert!(at_two < 0.05, "{at_two}");
}

#[test]
fn db_conversion_values() {
    let l = LinkParams::from_db(-20.0, 6.0).unwrap();
    assert!((l.m() - -4.605_170_185_988_09).abs() < 1e-12);
    assert!((l.s() - 1.381_551_055_796_43).abs() < 1e-12);
}

#[test]
fn lognormal_cdf_at_e_is_phi_one() {
    let l = LinkParams::new(0.0, 1.0).unwrap();
    let v = lognormal_cdf(E, &l).unwrap();
    assert!((v - 0.841_344_746_068_542_948_585).abs() < 1e-15);
}

#[test]
fn lognormal_pdf_has_unit_mass() {
    for (m, s) in [(0.0, 1.0), (-4.6, 1.38), (2.0, 0.2)] {
        let l = LinkParams::new(m, s).unwrap();
        let mass = integrate(
            |z| lognormal_pdf((m + s * z).exp(), &l).unwrap() * (m + s * z).exp() * s,
            -40.0,
            40.0,
            1e-12,
        );
        assert!((mass - 1.0).abs() < 1e-8, "m={m} s={s}: {mass}");
    }
}

fn topology(n: u32) -> PinholeTopology {
    let l = LinkParams::from_db(-20.0, 6.0).unwrap();
    PinholeTopology::new(l, l, l, n, true).unwrap()
}

#[test]
fn best_destination_pdf_has_unit_mass() {
    for n in [1, 5, 40] {
        let topo = topology(n);
        let (m, s) = (topo.destination_link.m(), topo.destination_link.s());
        let mass = integrate(
            |z| {
                let x = (m + s * z).exp();
                best_destination_pdf(x, &topo).unwrap() * x * s
            },
            -40.0,
            40.0,
            1e-12,
        );
        assert!((mass - 1.0).abs() < 1e-7, "N={n}: {mass}");
    }
}

#[test]
fn best_destination_pdf_is_derivative_of_cdf() {
    for n in [1, 3, 10] {
        let topo = topology(n);
        for k in -8..=8 {
            let x = (topo.destination_link.m() + 0.25 * f64::from(k) * topo.destination_link.s()).exp();
            let h = 1e-5 * x;
            let fd = (best_destination_cdf(x + h, &topo).unwrap()
                - best_destination_cdf(x - h, &topo).unwrap())
                / (2.0 * h);
            let pdf = best_destination_pdf(x, &topo).unwrap();
            if pdf > 1e-300 {
                assert!(((fd - pdf) / pdf).abs() < 1e-6, "N={n} x={x}: {fd} vs {pdf}");
            }
        }
    }
}

#[test]
fn best_destination_cdf_matches_sampled_maximum() {
    let topo = topology(10);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let trials = 1_000_000;
    let below = (0..trials)
        .filter(|_| sample_best_gain(&topo.destination_link, 10, &mut rng) <= 1.0)
        .count() as f64;
    let p = best_destination_cdf(1.0, &topo).unwrap();
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    assert!((below / trials as f64 - p).abs() < 3.0 * sigma + 1e-12, "{} vs {p}", below / trials as f64);
}

fn ks_statistic(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn sampled_gains_pass_kolmogorov_smirnov() {
    let n = 100_000;
    let critical = 1.628 / (n as f64).sqrt();
    let link = LinkParams::from_db(-20.0, 6.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let xs: Vec<f64> = (0..n).map(|_| sample_gain(&link, &mut rng)).collect();
    let d = ks_statistic(xs, |x| lognormal_cdf(x, &link).unwrap());
    assert!(d < critical, "single link: D = {d}");

    let topo = topology(8);
    let xs: Vec<f64> = (0..n)
        .map(|_| sample_best_gain(&topo.destination_link, 8, &mut rng))
        .collect();
    let d = ks_statistic(xs, |x| best_destination_cdf(x, &topo).unwrap());
    assert!(d < critical, "best of 8: D = {d}");
}

#[test]
fn sample_mean_matches_lognormal_mean() {
    let link = LinkParams::new(0.2, 0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 10_000_000;
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..n {
        let g = sample_gain(&link, &mut rng);
        sum += g;
        sum_sq += g * g;
    }
    let mean = sum / n as f64;
    let se = ((sum_sq / n as f64 - mean * mean) / n as f64).sqrt();
    assert!((mean - lognormal_mean(&link)).abs() < 3.0 * se);
}

#[test]
fn mean_of_best_grows_with_n_under_common_draws() {
    let link = LinkParams::from_db(-20.0, 6.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let trials = 200_000;
    let mut sums = [0.0; 4];
    for _ in 0..trials {
        let draws: Vec<f64> = (0..8).map(|_| sample_gain(&link, &mut rng)).collect();
        for (slot, n) in [1usize, 2, 4, 8].into_iter().enumerate() {
            sums[slot] += draws[..n].iter().copied().fold(0.0, f64::max);
        }
    }
    assert!(sums.windows(2).all(|w| w[1] >= w[0]), "{sums:?}");
}

fn log_correlation(pinhole: bool) -> (f64, usize) {
    let mut topo = topology(4);
    topo.pinhole_present = pinhole;
    let links = topo.effective_links();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let n = 200_000;
    let pairs: Vec<(f64, f64)> = (0..n)
        .map(|_| {
            let a = links.source.map_or(1.0, |l| sample_gain(&l, &mut rng));
            let b = sample_best_gain(&links.destination, 4, &mut rng);
            let e = sample_gain(&links.eavesdropper, &mut rng);
            ((a * b).ln(), (a * e).ln())
        })
        .collect();
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / n as f64;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in &pairs {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx).powi(2);
        syy += (y - my).powi(2);
    }
    (sxy / (sxx * syy).sqrt(), n)
}

#[test]
fn pinhole_correlates_end_to_end_gains() {
    let (with, _) = log_correlation(true);
    assert!(with > 0.3, "{with}");
    let (without, n) = log_correlation(false);
    assert!(without.abs() < 3.0 / (n as f64).sqrt(), "{without}");
}

#[test]
fn impulse_frequency_matches_probability() {
    let noise = NoiseParams::new(1.0, 10.0, 0.1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let n = 1_000_000;
    let hits = (0..n)
        .filter(|_| sample_noise_state(&noise, &mut rng) == NoiseState::Impulsive)
        .count() as f64;
    let sigma = (0.1 * 0.9 / n as f64).sqrt();
    assert!((hits / n as f64 - 0.1).abs() < 3.0 * sigma);
}

/// POI by one-dimensional adaptive integration over the eavesdropper gain.
fn poi_oracle(cfg: &SystemConfig) -> f64 {
    let links = cfg.topology.effective_links();
    let (b, e) = (links.destination, links.eavesdropper);
    let n = cfg.n_destinations() as i32;
    let mut total = 0.0;
    for jb in NoiseState::ALL {
        for ke in NoiseState::ALL {
            let ab = 1.0 / cfg.dest_noise.variance(jb);
            let ae = 1.0 / cfg.eav_noise.variance(ke);
            let w = cfg.dest_noise.state_prob(jb) * cfg.eav_noise.state_prob(ke);
            // P(ab·γn* < ae·γe) = E_e[F_b(ae γe / ab)^N]
            let inner = integrate_line(
                |z| {
                    let ge = (e.m() + e.s() * z).exp();
                    let u = ((ae * ge / ab).ln() - b.m()) / b.s();
                    normal_cdf(u).powi(n) * normal_pdf(z)
                },
                1e-13,
            );
            total += w * inner;
        }
    }
    total
}

#[test]
fn poi_quadrature_against_adaptive_integration() {
    let cases = [
        Setup { n: 1, ..Setup::default() },
        Setup { n: 4, m_b: -30.0, ..Setup::default() },
        Setup { n: 8, s_b: 10.0, ..Setup::default() },
        Setup { n: 3, m_e: -25.0, s_e: 9.0, ..Setup::default() },
    ];
    for setup in cases {
        let cfg = setup.build();
        let got = poi_quadrature(&cfg).unwrap().value;
        let want = poi_oracle(&cfg);
        assert!((got - want).abs() < 1e-9 + 1e-7 * want, "N={}: {got} vs {want}", setup.n);
    }
}

#[test]
fn symmetric_single_destination_poi_is_half() {
    let setup = Setup { n: 1, m_e: -20.0, ..Setup::default() };
    let cfg = setup.build();
    assert!((poi_quadrature(&cfg).unwrap().value - 0.5).abs() < 1e-12);
    let mc = McConfig::new(1_000_000, 4).unwrap();
    let est = mc_poi(&cfg, &mc).unwrap();
    assert!((est.value - 0.5).abs() < 3.0 * (0.25 / 1e6_f64).sqrt());
}

/// ASC without the pinhole and without impulses, by nested adaptive
/// integration of the clamped rate difference.
fn asc_oracle_direct_links(cfg: &SystemConfig) -> f64 {
    let links = cfg.topology.effective_links();
    assert!(links.source.is_none());
    let (b, e) = (links.destination, links.eavesdropper);
    let n = cfg.n_destinations() as i32;
    let alpha = cfg.transmit_power / cfg.dest_noise.background_var;
    let alpha_e = cfg.transmit_power / cfg.eav_noise.background_var;
    // density of the standardized best-destination exponent
    let best = |u: f64| f64::from(n) * normal_cdf(u).powi(n - 1) * normal_pdf(u);
    integrate(
        |u| {
            let gb = (b.m() + b.s() * u).exp();
            let cb = (alpha * gb).ln_1p();
            // eavesdropper exponent below which the secrecy rate is positive
            let z_max = (((alpha * gb / alpha_e).ln()) - e.m()) / e.s();
            let inner = integrate(
                |z| {
                    let ge = (e.m() + e.s() * z).exp();
                    (cb - (alpha_e * ge).ln_1p()) * normal_pdf(z)
                },
                -12.0,
                z_max.min(12.0),
                1e-12,
            );
            best(u) * inner / LN_2
        },
        -12.0,
        12.0,
        1e-11,
    )
}

#[test]
fn asc_quadrature_against_adaptive_integration() {
    let gaussian = NoiseParams::gaussian();
    for (n, power_db) in [(1, 20.0), (3, 40.0), (10, 30.0)] {
        let setup = Setup {
            n,
            pinhole: false,
            power_db,
            dest_noise: gaussian,
            eav_noise: gaussian,
            ..Setup::default()
        };
        let cfg = setup.build();
        let got = asc_quadrature(&cfg).unwrap().value;
        let want = asc_oracle_direct_links(&cfg);
        assert!((got - want).abs() < 1e-5, "N={n} P={power_db}: {got} vs {want}");
    }
}

#[test]
fn asc_quadrature_matches_monte_carlo_symmetric_case() {
    let gaussian = NoiseParams::gaussian();
    let setup = Setup {
        n: 1,
        m_e: -20.0,
        dest_noise: gaussian,
        eav_noise: gaussian,
        power_db: 40.0,
        ..Setup::default()
    };
    let cfg = setup.build();
    let q = asc_quadrature(&cfg).unwrap().value;
    let mc = mc_asc(&cfg, &McConfig::new(10_000_000, 8).unwrap()).unwrap();
    assert!((q - mc.value).abs() <= mc.ci_halfwidth, "{q} vs {} ± {}", mc.value, mc.ci_halfwidth);
}

#[test]
fn mc_asc_vanishes_when_eavesdropper_dominates() {
    let setup = Setup {
        m_b: -40.0,
        m_e: 0.0,
        n: 1,
        dest_noise: NoiseParams::new(1.0, 1e4, 1.0).unwrap(),
        ..Setup::default()
    };
    let est = mc_asc(&setup.build(), &McConfig::new(100_000, 1).unwrap()).unwrap();
    assert!(est.value < 1e-4 && est.value <= est.ci_halfwidth + 1e-12, "{est:?}");
}

#[test]
fn mc_poi_matches_closed_form_at_four_destinations() {
    let cfg = Setup { n: 4, ..Setup::default() }.build();
    let cf = poi_closed_form(&cfg).unwrap().value;
    let q = poi_quadrature(&cfg).unwrap().value;
    let n = 10_000_000;
    let est = mc_poi(&cfg, &McConfig::new(n, 6).unwrap()).unwrap();
    let sigma = (q * (1.0 - q) / n as f64).sqrt();
    assert!((est.value - q).abs() < 3.0 * sigma, "{} vs {q}", est.value);
    // the closed form carries the Q-approximation error on top
    assert!((est.value - cf).abs() < 3.0 * sigma + 0.01 * cf, "{} vs {cf}", est.value);
}

#[test]
fn single_destination_half_line_terms() {
    // With N = 1 the destination side is the plain mean of ln(α̃γn) split at
    // the median: the two halves are (c/2 ∓ s/√(2π))/ln 2.
    let cfg = Setup { n: 1, ..Setup::default() }.build();
    let b = cfg.topology.destination_link;
    for j in NoiseState::ALL {
        for k in NoiseState::ALL {
            let t = asymptotic_terms(&cfg, j, k).unwrap();
            let c = (1.0 / cfg.dest_noise.variance(j)).ln() + b.m();
            let half = b.s() / (2.0 * PI).sqrt();
            assert!((t.dest_neg - (0.5 * c + half) / LN_2).abs() < 1e-12);
            assert!((t.dest_pos - (0.5 * c - half) / LN_2).abs() < 1e-12);
            let ce = (1.0 / cfg.eav_noise.variance(k)).ln() + cfg.topology.eavesdropper_link.m();
            assert!((t.eav_zero - ce / LN_2).abs() < 1e-12);
        }
    }
}

#[test]
fn large_n_form_for_single_gaussian_destination() {
    let gaussian = NoiseParams::new(2.0, 0.0, 0.0).unwrap();
    let cfg = Setup {
        n: 1,
        dest_noise: gaussian,
        eav_noise: gaussian,
        ..Setup::default()
    }
    .build();
    let (b, e) = (cfg.topology.destination_link, cfg.topology.eavesdropper_link);
    let ln_var = 2f64.ln();
    let want = ((b.m() - ln_var) / 2.0 + b.s() / (2.0 * PI).sqrt() - (e.m() - ln_var)) / LN_2;
    let got = asc_asymptotic_large_n(&cfg).unwrap().value;
    assert!((got - want).abs() < 1e-12, "{got} vs {want}");
}

#[test]
fn asymptote_is_the_high_power_limit_of_the_quadrature() {
    // Far into saturation the only residual gap is the Q-approximation.
    let cfg = Setup::default().build().with_transmit_power_db(140.0).unwrap();
    let q = asc_quadrature(&cfg).unwrap().value;
    let a = asc_asymptotic(&cfg).unwrap().value;
    assert!(((q - a) / q).abs() < 0.005, "{q} vs {a}");
}

#[test]
fn half_mass_of_the_segment_split_by_kronrod() {
    let s = gaussian_segment_integrals(0.7, -1.3).unwrap();
    let g = |t: f64| normal_pdf(0.7 * t + 1.3);
    let neg = integrate_from(0.0, |t| g(-t), 1e-14);
    let pos_t = integrate_from(0.0, |t| t * g(t), 1e-14);
    assert!((s.neg - neg).abs() < 1e-12);
    assert!((s.pos_t - pos_t).abs() < 1e-12);
}
