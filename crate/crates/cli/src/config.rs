//! JSON configuration with command-line overrides.

use serde_json::{Map, Value};

use crate::error::CliError;
use crate::units::{Quantity, UnitSystem};

/// Command parameters after overrides, with the unit system that applies to
/// every numeric entry.
#[derive(Debug, Clone)]
pub struct Params {
    map: Map<String, Value>,
    units: UnitSystem,
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Parses a JSON document that must be an object.
pub fn parse_document(text: &str) -> Result<Map<String, Value>, CliError> {
    match serde_json::from_str::<Value>(text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(config_err("configuration must be a JSON object")),
        Err(e) => Err(config_err(format!("invalid JSON configuration: {e}"))),
    }
}

/// Applies one `key=value` override. The value is read as JSON when it
/// parses, otherwise as a string.
pub fn apply_override(map: &mut Map<String, Value>, spec: &str) -> Result<(), CliError> {
    let (key, raw) = spec
        .split_once('=')
        .ok_or_else(|| config_err(format!("override {spec:?} is not key=value")))?;
    let key = key.trim();
    if key.is_empty() {
        return Err(config_err(format!("override {spec:?} has an empty key")));
    }
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    map.insert(key.to_string(), value);
    Ok(())
}

pub fn as_number(key: &str, v: &Value) -> Result<f64, CliError> {
    let x = v
        .as_f64()
        .ok_or_else(|| config_err(format!("{key} must be a number, got {v}")))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(config_err(format!("{key} must be finite")))
    }
}

impl Params {
    pub fn new(map: Map<String, Value>, units: UnitSystem) -> Self {
        Self { map, units }
    }

    pub fn units(&self) -> UnitSystem {
        self.units
    }

    pub fn contains(&self, key: &str) -> bool {
        self.map.contains_key(key)
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.map.get(key)
    }

    /// Optional number converted to CGS.
    pub fn number(&self, key: &str, kind: Quantity) -> Result<Option<f64>, CliError> {
        self.map
            .get(key)
            .map(|v| as_number(key, v).map(|x| self.units.to_cgs(kind, x)))
            .transpose()
    }

    pub fn require(&self, key: &str, kind: Quantity) -> Result<f64, CliError> {
        self.number(key, kind)?
            .ok_or_else(|| config_err(format!("missing required parameter {key:?}")))
    }

    pub fn string(&self, key: &str) -> Result<Option<&str>, CliError> {
        match self.map.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s)),
            Some(v) => Err(config_err(format!("{key} must be a string, got {v}"))),
        }
    }

    pub fn count(&self, key: &str) -> Result<Option<usize>, CliError> {
        match self.map.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .map(|n| Some(n as usize))
                .ok_or_else(|| config_err(format!("{key} must be a non-negative integer"))),
        }
    }

    /// Array of numbers converted to CGS.
    pub fn numbers(&self, key: &str, kind: Quantity) -> Result<Option<Vec<f64>>, CliError> {
        match self.map.get(key) {
            None => Ok(None),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| as_number(key, v).map(|x| self.units.to_cgs(kind, x)))
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            Some(v) => Err(config_err(format!(
                "{key} must be an array of numbers, got {v}"
            ))),
        }
    }

    /// Fails on keys outside `allowed`, catching misspelt parameters.
    pub fn reject_unknown(&self, allowed: &[&str]) -> Result<(), CliError> {
        let unknown: Vec<&str> = self
            .map
            .keys()
            .map(String::as_str)
            .filter(|k| !allowed.contains(k) && *k != "units")
            .collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(config_err(format!(
                "unknown parameter(s): {}",
                unknown.join(", ")
            )))
        }
    }
}
