//! TOML configuration files.
//!
//! ```toml
//! preset = "fig3"            # optional: start from a named preset
//! values = [0, 20, 40]       # any key below overrides the preset
//! methods = ["quadrature"]
//!
//! [scenario]
//! n_destinations = 40
//!
//! [scenario.source]
//! s_db = 10
//! ```
//!
//! Tables are merged key by key, so `[scenario.source]` above keeps the
//! preset's `m_db`. Without a preset, [`REQUIRED_FIELDS`] must be present
//! and the scenario falls back to [`super::Scenario::default`].

use std::path::Path;

use toml::{Table, Value};

use super::{constraint, preset_base, SweepSpec};
use crate::error::{Error, Result};

/// Keys a configuration without `preset` must set.
pub const REQUIRED_FIELDS: [&str; 4] = ["axis", "metric", "values", "methods"];

pub fn load_config(path: impl AsRef<Path>) -> Result<SweepSpec> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<SweepSpec> {
    let mut table: Table = toml::from_str(text).map_err(|e| parse_error(text, &e))?;
    let root = match table.remove("preset") {
        Some(Value::String(name)) => {
            let base = preset_base(&name).map_err(|e| constraint("preset", e))?;
            let Ok(Value::Table(mut root)) = Value::try_from(&base) else {
                return Err(Error::Config(format!("cannot encode preset `{name}`")));
            };
            merge(&mut root, table);
            root
        }
        Some(other) => {
            return Err(Error::Constraint {
                path: "preset".into(),
                message: format!("expected a preset name, found {}", other.type_str()),
            })
        }
        None => {
            let missing: Vec<&str> = REQUIRED_FIELDS
                .iter()
                .copied()
                .filter(|k| !table.contains_key(*k))
                .collect();
            if !missing.is_empty() {
                return Err(Error::Config(format!(
                    "missing required fields: {} (or name a `preset`)",
                    missing.join(", ")
                )));
            }
            table
        }
    };
    let spec: SweepSpec = serde_path_to_error::deserialize(Value::Table(root)).map_err(|e| {
        let path = e.path().to_string();
        Error::Constraint {
            path,
            message: e.into_inner().message().to_string(),
        }
    })?;
    spec.validate()?;
    Ok(spec)
}

/// Serializes a spec so that [`parse_config`] returns it unchanged.
pub fn dump_config(spec: &SweepSpec) -> Result<String> {
    toml::to_string(spec).map_err(|e| Error::Config(format!("cannot encode spec: {e}")))
}

fn merge(base: &mut Table, overrides: Table) {
    for (key, value) in overrides {
        match (base.get_mut(&key), value) {
            (Some(Value::Table(b)), Value::Table(o)) => merge(b, o),
            (_, value) => {
                base.insert(key, value);
            }
        }
    }
}

fn parse_error(text: &str, err: &toml::de::Error) -> Error {
    let offset = err.span().map_or(0, |s| s.start).min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Error::Parse {
        line,
        column,
        message: err.message().to_string(),
    }
}
