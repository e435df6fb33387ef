//! JSON documents describing presentations.
//!
//! Two generator forms share one schema: a finite `table` mapping points to points, or an
//! `expr` written in an instance's element grammar (resolved by the command-line front end).
//!
//! ```json
//! {
//!   "name": "constant-map",
//!   "max_depth": 2,
//!   "samples": [1, 2],
//!   "generators": [{ "name": "z", "table": { "0": 0, "1": 0, "2": 0 } }]
//! }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Generator, Presentation, DEFAULT_MAX_DEPTH};
use crate::error::{Error, Result};
use crate::instances::TowerConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationConfig {
    #[serde(default)]
    pub name: Option<String>,
    /// Instance whose grammar the `expr` generators and the samples use. Absent for tables.
    #[serde(default)]
    pub instance: Option<String>,
    #[serde(default)]
    pub max_depth: Option<usize>,
    pub samples: Vec<Value>,
    pub generators: Vec<GeneratorConfig>,
    /// Level rules for the `tower` instance.
    #[serde(default)]
    pub tower: Option<TowerConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    pub name: String,
    #[serde(default)]
    pub table: Option<BTreeMap<String, Value>>,
    #[serde(default)]
    pub expr: Option<String>,
}

impl PresentationConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn depth(&self) -> usize {
        self.max_depth.unwrap_or(DEFAULT_MAX_DEPTH)
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| "config".into())
    }
}

/// Renders a JSON scalar as a point label: strings verbatim, numbers in decimal.
pub fn scalar_label(value: &Value) -> Result<String> {
    match value {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        other => Err(Error::Config(format!("expected a scalar point label, found {other}"))),
    }
}

/// Builds a presentation whose generators are all finite tables over string-labelled points.
pub fn table_presentation(config: &PresentationConfig) -> Result<Presentation<String>> {
    if config.instance.is_some() {
        return Err(Error::Config(
            "instance-based presentations must be resolved with that instance's grammar".into(),
        ));
    }
    let samples = config
        .samples
        .iter()
        .map(scalar_label)
        .collect::<Result<Vec<_>>>()?;
    let generators = config
        .generators
        .iter()
        .map(|g| {
            if g.expr.is_some() {
                return Err(Error::Config(format!(
                    "generator `{}`: expr requires an `instance`",
                    g.name
                )));
            }
            let table = g
                .table
                .as_ref()
                .ok_or_else(|| Error::Config(format!("generator `{}` has no table", g.name)))?;
            let table: BTreeMap<String, String> = table
                .iter()
                .map(|(k, v)| Ok((k.clone(), scalar_label(v)?)))
                .collect::<Result<_>>()?;
            Ok(Generator::new(g.name.clone(), move |x: &String| {
                table.get(x).cloned()
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Presentation::new(config.display_name(), generators, samples, config.depth())
}
