//! Named sweeps `fig3` … `fig8`.
//!
//! ASC presets sweep the transmit power over −10…60 dB in 2 dB steps (the
//! background noise variance is one, so this is the per-link SNR scale).
//! The POI preset sweeps `N` over 1…16. Series labels encode the varied
//! parameters, e.g. `n40_sa10_noph`.

use super::{Axis, LinkDb, Metric, Scenario, SweepSpec};
use crate::error::{Error, Result};
use crate::metrics::Method;
use crate::montecarlo::McConfig;
use crate::noise::NoiseParams;

pub const PRESET_NAMES: [&str; 6] = ["fig3", "fig4", "fig5", "fig6", "fig7", "fig8"];

/// Transmit-power grid of the ASC presets, in dB.
pub fn power_grid_db() -> Vec<f64> {
    (0..36).map(|i| -10.0 + 2.0 * f64::from(i)).collect()
}

fn asc_spec(label: String, scenario: Scenario) -> SweepSpec {
    SweepSpec {
        label,
        axis: Axis::TransmitPowerDb,
        metric: Metric::Asc,
        values: power_grid_db(),
        methods: vec![Method::Quadrature, Method::Asymptotic, Method::MonteCarlo],
        workers: 1,
        scenario,
        monte_carlo: McConfig::default(),
    }
}

fn fig3() -> Vec<SweepSpec> {
    let mut out = Vec::new();
    for n in [10, 40] {
        for s_a in [2.0, 6.0, 10.0] {
            for pinhole in [true, false] {
                let scenario = Scenario {
                    n_destinations: n,
                    pinhole,
                    source: LinkDb::new(-20.0, s_a),
                    ..Scenario::default()
                };
                let tag = if pinhole { "ph" } else { "noph" };
                out.push(asc_spec(format!("n{n}_sa{s_a}_{tag}"), scenario));
            }
        }
    }
    out
}

fn fig4() -> Vec<SweepSpec> {
    let mut out = Vec::new();
    for n in [10, 40] {
        for m_a in [-30.0, -20.0, -10.0] {
            for pinhole in [true, false] {
                let scenario = Scenario {
                    n_destinations: n,
                    pinhole,
                    source: LinkDb::new(m_a, 6.0),
                    ..Scenario::default()
                };
                let tag = if pinhole { "ph" } else { "noph" };
                out.push(asc_spec(format!("n{n}_ma{m_a}_{tag}"), scenario));
            }
        }
    }
    out
}

fn fig5() -> Vec<SweepSpec> {
    let mut out = Vec::new();
    for n in [10, 40] {
        for (s_b, s_e) in [(6.0, 6.0), (10.0, 6.0), (6.0, 10.0)] {
            let scenario = Scenario {
                n_destinations: n,
                destination: LinkDb::new(-20.0, s_b),
                eavesdropper: LinkDb::new(-40.0, s_e),
                ..Scenario::default()
            };
            out.push(asc_spec(format!("n{n}_sb{s_b}_se{s_e}"), scenario));
        }
    }
    out
}

fn fig6() -> Vec<SweepSpec> {
    [-20.0, -30.0]
        .into_iter()
        .map(|m_b| {
            let scenario = Scenario {
                destination: LinkDb::new(m_b, 6.0),
                ..Scenario::default()
            };
            asc_spec(format!("mb{m_b}"), scenario)
        })
        .collect()
}

fn fig7() -> Vec<SweepSpec> {
    let mut out = Vec::new();
    for p in [0.1, 0.9] {
        for (eta_b, eta_e) in [(10.0, 100.0), (100.0, 10.0)] {
            let scenario = Scenario {
                dest_noise: NoiseParams {
                    background_var: 1.0,
                    impulse_ratio: eta_b,
                    impulse_prob: p,
                },
                eav_noise: NoiseParams {
                    background_var: 1.0,
                    impulse_ratio: eta_e,
                    impulse_prob: p,
                },
                ..Scenario::default()
            };
            out.push(asc_spec(format!("p{p}_etab{eta_b}_etae{eta_e}"), scenario));
        }
    }
    out
}

fn fig8() -> Vec<SweepSpec> {
    [(6.0, 6.0, -20.0), (6.0, 6.0, -30.0), (10.0, 6.0, -20.0), (6.0, 10.0, -20.0)]
        .into_iter()
        .map(|(s_b, s_e, m_b)| SweepSpec {
            label: format!("sb{s_b}_se{s_e}_mb{m_b}"),
            axis: Axis::NDestinations,
            metric: Metric::Poi,
            values: (1..=16).map(f64::from).collect(),
            methods: vec![Method::Quadrature, Method::ClosedForm, Method::MonteCarlo],
            workers: 1,
            scenario: Scenario {
                destination: LinkDb::new(m_b, s_b),
                eavesdropper: LinkDb::new(-40.0, s_e),
                ..Scenario::default()
            },
            monte_carlo: McConfig::default(),
        })
        .collect()
}

/// All series of a named preset.
pub fn preset(name: &str) -> Result<Vec<SweepSpec>> {
    match name {
        "fig3" => Ok(fig3()),
        "fig4" => Ok(fig4()),
        "fig5" => Ok(fig5()),
        "fig6" => Ok(fig6()),
        "fig7" => Ok(fig7()),
        "fig8" => Ok(fig8()),
        _ => Err(Error::Config(format!(
            "unknown preset `{name}`; expected one of {}",
            PRESET_NAMES.join(", ")
        ))),
    }
}

/// The first series of a preset with its label cleared: the base
/// parameters that configuration files build on.
pub fn preset_base(name: &str) -> Result<SweepSpec> {
    let mut spec = preset(name)?.swap_remove(0);
    spec.label.clear();
    Ok(spec)
}
