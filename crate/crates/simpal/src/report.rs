//! Run reports.
//!
//! A report is one JSON document with the fields `command`, `parameters`,
//! `results`, `timing` and `checkpoint_path` (plus `certificate` for family
//! runs). Object keys inside `parameters`, `results` and `certificate` are
//! sorted, so identical invocations produce byte-identical output apart
//! from `timing`. The CSV form contains the results only.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{Number, Value};

/// Output format of a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// The document printed by every subcommand.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    /// Wall-clock seconds.
    pub timing: f64,
    pub checkpoint_path: Option<String>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            results: Vec::new(),
            certificate: None,
            timing: 0.0,
            checkpoint_path: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The results as CSV. Scalar results go in a single `value` column;
    /// object results get one column per key, in sorted order.
    pub fn to_csv(&self) -> String {
        let mut columns: Vec<String> = Vec::new();
        for r in &self.results {
            if let Value::Object(map) = r {
                for k in map.keys() {
                    if !columns.contains(k) {
                        columns.push(k.clone());
                    }
                }
            }
        }
        columns.sort();
        let scalar = columns.is_empty();
        if scalar {
            columns.push("value".to_string());
        }
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&columns).expect("in-memory write");
        for r in &self.results {
            let row: Vec<String> = if scalar {
                vec![cell(r)]
            } else {
                columns.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect()
            };
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        other => other.to_string(),
    }
}

/// An exact JSON integer of any size.
pub fn int(n: impl Display) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

/// A real rendered in scientific notation with `digits` significant
/// digits, as a string so that no reader rounds it again.
pub fn real(x: f64, digits: usize) -> Value {
    Value::String(format!("{:.*e}", digits.saturating_sub(1), x))
}

/// A real rendered in fixed-point notation with `decimals` decimals.
pub fn fixed(x: f64, decimals: usize) -> Value {
    Value::String(format!("{:.*}", decimals, x))
}
