//! Parameter sweeps, named presets and CSV output.
//!
//! A [`SweepSpec`] fixes one [`Scenario`], one axis (transmit power in dB
//! or the number of destinations), the axis values and a list of
//! evaluation methods. [`run_sweep`] evaluates every (value, method) pair
//! and returns the rows in axis order; a failing point becomes an error row
//! and the rest of the sweep still runs.
//!
//! Configuration files are TOML, see [`parse_config`]. Named presets live
//! in [`presets`].

mod config;
pub mod presets;

use std::fmt;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{LinkParams, PinholeTopology};
use crate::error::{Error, Result};
use crate::metrics::{
    asc_asymptotic, asc_asymptotic_large_n, asc_quadrature, poi_closed_form, poi_quadrature,
    Method, SecrecyResult, SystemConfig,
};
use crate::montecarlo::{mc_asc, mc_poi, McConfig};
use crate::noise::NoiseParams;
use crate::special::{gauss_hermite_rule, QApproxParams, DEFAULT_QUADRATURE_ORDER};

pub use config::{dump_config, load_config, parse_config, REQUIRED_FIELDS};
pub use presets::{preset, preset_base, PRESET_NAMES};

/// CSV header written by [`write_csv`].
pub const CSV_HEADER: [&str; 5] = ["axis", "method", "metric", "value", "ci_halfwidth"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    TransmitPowerDb,
    NDestinations,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Asc,
    Poi,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Asc => "asc",
            Metric::Poi => "poi",
        }
    }

    /// Whether `method` can evaluate this metric.
    pub fn supports(self, method: Method) -> bool {
        match self {
            Metric::Asc => matches!(
                method,
                Method::Quadrature
                    | Method::Asymptotic
                    | Method::AsymptoticLargeN
                    | Method::MonteCarlo
            ),
            Metric::Poi => matches!(
                method,
                Method::Quadrature | Method::ClosedForm | Method::MonteCarlo
            ),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Link parameters as written in configuration files, in dB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkDb {
    pub m_db: f64,
    pub s_db: f64,
}

impl LinkDb {
    pub const fn new(m_db: f64, s_db: f64) -> Self {
        LinkDb { m_db, s_db }
    }
}

/// Scenario in configuration units. Missing fields take the values of
/// [`Scenario::default`]: every link has `s = 6 dB`, `ma = mb = −20 dB`,
/// `me = −40 dB`, both noise classes have `p = 0.1`, `η = 10`, unit
/// background variance, `N = 10` with the pinhole present and `P = 30 dB`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Scenario {
    pub n_destinations: u32,
    pub pinhole: bool,
    pub transmit_power_db: f64,
    pub quad_order: usize,
    pub source: LinkDb,
    pub destination: LinkDb,
    pub eavesdropper: LinkDb,
    pub dest_noise: NoiseParams,
    pub eav_noise: NoiseParams,
    pub q_approx: QApproxParams,
}

impl Default for Scenario {
    fn default() -> Self {
        let noise = NoiseParams {
            background_var: 1.0,
            impulse_ratio: 10.0,
            impulse_prob: 0.1,
        };
        Scenario {
            n_destinations: 10,
            pinhole: true,
            transmit_power_db: 30.0,
            quad_order: DEFAULT_QUADRATURE_ORDER,
            source: LinkDb::new(-20.0, 6.0),
            destination: LinkDb::new(-20.0, 6.0),
            eavesdropper: LinkDb::new(-40.0, 6.0),
            dest_noise: noise,
            eav_noise: noise,
            q_approx: QApproxParams::STANDARD,
        }
    }
}

impl Scenario {
    /// Builds the evaluation config; errors carry the offending field path
    /// relative to the scenario table, prefixed with `prefix`.
    pub fn system_config(&self, prefix: &str) -> Result<SystemConfig> {
        let at = |field: &str| format!("{prefix}{field}");
        let link = |field: &str, l: LinkDb| {
            LinkParams::from_db(l.m_db, l.s_db).map_err(|e| constraint(at(field), e))
        };
        let topology = PinholeTopology::new(
            link("source", self.source)?,
            link("destination", self.destination)?,
            link("eavesdropper", self.eavesdropper)?,
            self.n_destinations,
            self.pinhole,
        )
        .map_err(|e| constraint(at("n_destinations"), e))?;
        self.dest_noise
            .validate()
            .map_err(|e| constraint(at("dest_noise"), e))?;
        self.eav_noise
            .validate()
            .map_err(|e| constraint(at("eav_noise"), e))?;
        self.q_approx
            .validate()
            .map_err(|e| constraint(at("q_approx"), e))?;
        let rule = gauss_hermite_rule(self.quad_order).map_err(|e| constraint(at("quad_order"), e))?;
        let power = power_from_db(self.transmit_power_db)
            .map_err(|e| constraint(at("transmit_power_db"), e))?;
        let mut cfg = SystemConfig::new(topology, self.dest_noise, self.eav_noise, power)?;
        cfg.quadrature = std::sync::Arc::new(rule);
        cfg.q_approx = self.q_approx;
        Ok(cfg)
    }
}

fn power_from_db(db: f64) -> Result<f64> {
    let p = 10f64.powf(db / 10.0);
    if db.is_finite() && p > 0.0 && p.is_finite() {
        Ok(p)
    } else {
        Err(Error::Config(format!("transmit power of {db} dB is not representable")))
    }
}

/// One sweep: a scenario, an axis with its values and the methods to run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    /// Series name, prepended to the method column of the CSV.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
    pub axis: Axis,
    pub metric: Metric,
    pub values: Vec<f64>,
    pub methods: Vec<Method>,
    /// Size of the pool that evaluates sweep points.
    #[serde(default = "one")]
    pub workers: usize,
    #[serde(default)]
    pub scenario: Scenario,
    #[serde(default)]
    pub monte_carlo: McConfig,
}

fn one() -> usize {
    1
}

pub(crate) fn constraint(path: impl Into<String>, err: Error) -> Error {
    let message = match err {
        Error::Config(m) | Error::Domain(m) => m,
        Error::Constraint { path: inner, message } => format!("{inner}: {message}"),
        other => other.to_string(),
    };
    Error::Constraint {
        path: path.into(),
        message,
    }
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Constraint {
        path: path.into(),
        message: message.into(),
    }
}

impl SweepSpec {
    /// Checks every invariant and returns the base evaluation config.
    pub fn validate(&self) -> Result<SystemConfig> {
        if self.values.is_empty() {
            return Err(invalid("values", "at least one axis value is required"));
        }
        for (i, v) in self.values.iter().enumerate() {
            if !v.is_finite() {
                return Err(invalid(format!("values[{i}]"), format!("{v} is not finite")));
            }
            if i > 0 && *v <= self.values[i - 1] {
                return Err(invalid(
                    format!("values[{i}]"),
                    "axis values must be strictly increasing",
                ));
            }
            if self.axis == Axis::NDestinations && !(v.fract() == 0.0 && *v >= 1.0 && *v <= u32::MAX as f64) {
                return Err(invalid(
                    format!("values[{i}]"),
                    format!("destination count must be a positive integer, got {v}"),
                ));
            }
        }
        if self.methods.is_empty() {
            return Err(invalid("methods", "at least one method is required"));
        }
        for (i, m) in self.methods.iter().enumerate() {
            if !self.metric.supports(*m) {
                return Err(invalid(
                    format!("methods[{i}]"),
                    format!("method `{m}` cannot evaluate metric `{}`", self.metric),
                ));
            }
            if self.methods[..i].contains(m) {
                return Err(invalid(format!("methods[{i}]"), format!("duplicate method `{m}`")));
            }
        }
        if self.workers == 0 {
            return Err(invalid("workers", "worker count must be positive"));
        }
        let mc = &self.monte_carlo;
        if mc.samples < crate::montecarlo::MIN_SAMPLES {
            return Err(constraint("monte_carlo.samples", mc.validate().unwrap_err()));
        }
        if mc.workers == 0 {
            return Err(invalid("monte_carlo.workers", "worker count must be positive"));
        }
        mc.validate()
            .map_err(|e| constraint("monte_carlo.confidence", e))?;
        self.scenario.system_config("scenario.")
    }

    /// Evaluation config at one axis value.
    pub fn config_at(&self, value: f64) -> Result<SystemConfig> {
        point_config(&self.validate()?, self.axis, value)
    }

    /// Number of rows [`run_sweep`] will produce.
    pub fn row_count(&self) -> usize {
        self.values.len() * self.methods.len()
    }
}

/// One evaluated point; failed points keep their error message.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub label: String,
    pub axis_value: f64,
    pub method: Method,
    pub metric: Metric,
    pub outcome: std::result::Result<SecrecyResult, String>,
}

impl SweepRow {
    pub fn is_error(&self) -> bool {
        self.outcome.is_err()
    }

    /// Method column of the CSV: `label/method`, or just the method.
    pub fn method_column(&self) -> String {
        if self.label.is_empty() {
            self.method.to_string()
        } else {
            format!("{}/{}", self.label, self.method)
        }
    }
}

fn point_config(base: &SystemConfig, axis: Axis, value: f64) -> Result<SystemConfig> {
    match axis {
        Axis::TransmitPowerDb => base.clone().with_transmit_power(power_from_db(value)?),
        Axis::NDestinations => base.clone().with_n_destinations(value as u32),
    }
}

/// Evaluates one metric with one method.
pub fn evaluate(
    cfg: &SystemConfig,
    metric: Metric,
    method: Method,
    mc: &McConfig,
) -> Result<SecrecyResult> {
    match (metric, method) {
        (Metric::Asc, Method::Quadrature) => asc_quadrature(cfg),
        (Metric::Asc, Method::Asymptotic) => asc_asymptotic(cfg),
        (Metric::Asc, Method::AsymptoticLargeN) => asc_asymptotic_large_n(cfg),
        (Metric::Asc, Method::MonteCarlo) => mc_asc(cfg, mc),
        (Metric::Poi, Method::Quadrature) => poi_quadrature(cfg),
        (Metric::Poi, Method::ClosedForm) => poi_closed_form(cfg),
        (Metric::Poi, Method::MonteCarlo) => mc_poi(cfg, mc),
        (metric, method) => Err(Error::Config(format!(
            "method `{method}` cannot evaluate metric `{metric}`"
        ))),
    }
}

/// Runs one sweep. Rows come back in axis order, methods in the order
/// listed, whatever the pool size. Only an invalid spec is an `Err`.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    run_series(std::slice::from_ref(spec))
}

/// Runs several sweeps through one pool and concatenates their rows.
pub fn run_series(specs: &[SweepSpec]) -> Result<Vec<SweepRow>> {
    let mut jobs = Vec::new();
    let mut workers = 1;
    for spec in specs {
        let base = spec.validate()?;
        workers = workers.max(spec.workers);
        for &value in &spec.values {
            for &method in &spec.methods {
                jobs.push((spec, base.clone(), value, method));
            }
        }
    }
    let run = |(spec, base, value, method): &(&SweepSpec, SystemConfig, f64, Method)| {
        let outcome = point_config(base, spec.axis, *value)
            .and_then(|cfg| evaluate(&cfg, spec.metric, *method, &spec.monte_carlo))
            .map_err(|e| e.to_string());
        SweepRow {
            label: spec.label.clone(),
            axis_value: *value,
            method: *method,
            metric: spec.metric,
            outcome,
        }
    };
    if workers == 1 {
        return Ok(jobs.iter().map(run).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| jobs.par_iter().map(run).collect()))
}

/// Formats `v` with 12 significant digits.
pub fn format_value(v: f64) -> String {
    format!("{v:.11e}")
}

/// Writes the rows as CSV. Error rows carry `nan` in both numeric columns.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(CSV_HEADER).map_err(io)?;
    for row in rows {
        let (value, ci) = match &row.outcome {
            Ok(r) => (format_value(r.value), format_value(r.ci_halfwidth)),
            Err(_) => ("nan".to_string(), "nan".to_string()),
        };
        w.write_record([
            row.axis_value.to_string(),
            row.method_column(),
            row.metric.to_string(),
            value,
            ci,
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
