//! Fixed-format JSON and CSV emission.
//!
//! Every float is written as `{:.16e}` (17 significant digits, scientific
//! notation), so identical inputs give byte-identical files.

use serde_json::{Map, Number, Value};

use crate::units::UnitSystem;

pub const SCHEMA_VERSION: u64 = 1;

pub fn fmt_float(x: f64) -> String {
    let s = format!("{x:.16e}");
    // Signed exponent, matching what the JSON number parser normalizes to.
    match s.split_once('e') {
        Some((m, e)) if !e.starts_with('-') => format!("{m}e+{e}"),
        _ => s,
    }
}

/// JSON number carrying the fixed-format text; non-finite values become `null`.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        fmt_float(x)
            .parse::<Number>()
            .map(Value::Number)
            .unwrap_or(Value::Null)
    } else {
        Value::Null
    }
}

/// Ordered JSON object for scalar results.
#[derive(Debug, Clone)]
pub struct JsonReport {
    map: Map<String, Value>,
}

impl JsonReport {
    pub fn new(command: &str, units: UnitSystem) -> Self {
        let mut map = Map::new();
        map.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
        map.insert("command".into(), Value::from(command));
        map.insert("units".into(), Value::from(units.name()));
        Self { map }
    }

    pub fn num(&mut self, key: &str, x: f64) -> &mut Self {
        self.map.insert(key.into(), num(x));
        self
    }

    pub fn value(&mut self, key: &str, v: Value) -> &mut Self {
        self.map.insert(key.into(), v);
        self
    }

    pub fn finish(self) -> String {
        let mut s = serde_json::to_string_pretty(&Value::Object(self.map))
            .expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

/// CSV table with a header line and fixed float formatting.
#[derive(Debug, Clone)]
pub struct CsvTable {
    out: String,
    columns: usize,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            out: format!("{}\n", header.join(",")),
            columns: header.len(),
        }
    }

    pub fn row(&mut self, values: &[f64]) {
        debug_assert_eq!(values.len(), self.columns);
        let cells: Vec<String> = values.iter().map(|&x| fmt_float(x)).collect();
        self.out.push_str(&cells.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_formatting() {
        assert_eq!(fmt_float(0.5), "5.0000000000000000e-1");
        assert_eq!(num(1e5).to_string(), "1.0000000000000000e+5");
        assert_eq!(num(f64::NAN), Value::Null);
        let back: f64 = fmt_float(0.1 + 0.2).parse().unwrap();
        assert_eq!(back, 0.1 + 0.2);
    }

    #[test]
    fn report_has_schema_version_first() {
        let mut r = JsonReport::new("speed", UnitSystem::Cgs);
        r.num("v", 1.0);
        let text = r.finish();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema_version"].as_u64(), Some(SCHEMA_VERSION));
        assert!(text.find("schema_version").unwrap() < text.find("\"v\"").unwrap());
    }

    #[test]
    fn csv_header_first() {
        let mut t = CsvTable::new(&["a", "b"]);
        t.row(&[1.0, 2.0]);
        assert_eq!(
            t.finish(),
            "a,b\n1.0000000000000000e+0,2.0000000000000000e+0\n"
        );
    }
}
