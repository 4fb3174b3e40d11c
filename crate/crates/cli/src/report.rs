//! Report rendering: JSON with a schema version, CSV and plain text.
//!
//! Floats are rounded to 15 significant digits in every format so reports
//! are stable across platforms and runs.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn round_sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn round_numbers(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(round_sig15).and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}

/// Serialized, rounded records plus optional raw text emitted before them.
#[derive(Debug, Default)]
pub struct Report {
    pub kind: &'static str,
    pub records: Vec<Value>,
    /// Emit a single object rather than a list.
    pub single: bool,
    /// CSV column selection; all top-level keys when `None`.
    pub columns: Option<&'static [&'static str]>,
    /// Printed verbatim ahead of the records (e.g. a digraph).
    pub preamble: Option<String>,
    /// Replaces the generic text rendering.
    pub text: Option<String>,
    /// Emit `text` verbatim whatever the format.
    pub raw: bool,
}

impl Report {
    pub fn single(kind: &'static str, record: &impl Serialize) -> CliResult<Self> {
        Ok(Report { kind, records: vec![to_value(record)?], single: true, ..Default::default() })
    }

    pub fn list<T: Serialize>(kind: &'static str, records: &[T]) -> CliResult<Self> {
        let records = records.iter().map(to_value).collect::<CliResult<_>>()?;
        Ok(Report { kind, records, ..Default::default() })
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        let mut out = self.preamble.clone().unwrap_or_default();
        if self.raw {
            out += self.text.as_deref().unwrap_or_default();
            return Ok(out);
        }
        match format {
            Format::Json => {
                let mut top = Map::new();
                top.insert("schema_version".into(), SCHEMA_VERSION.into());
                top.insert("kind".into(), self.kind.into());
                match (&self.records[..], self.single) {
                    ([Value::Object(fields)], true) => top.extend(fields.clone()),
                    _ => {
                        top.insert("reports".into(), Value::Array(self.records.clone()));
                    }
                }
                out += &serde_json::to_string_pretty(&Value::Object(top)).map_err(internal)?;
                out.push('\n');
            }
            Format::Csv => out += &self.csv()?,
            Format::Text => match &self.text {
                Some(text) => out += text,
                None => {
                    for (i, record) in self.records.iter().enumerate() {
                        if i > 0 {
                            out.push('\n');
                        }
                        flatten_text("", record, &mut out);
                    }
                }
            },
        }
        Ok(out)
    }

    fn csv(&self) -> CliResult<String> {
        let columns: Vec<String> = match (self.columns, self.records.first()) {
            (Some(cols), _) => cols.iter().map(|c| c.to_string()).collect(),
            (None, Some(Value::Object(first))) => first.keys().cloned().collect(),
            _ => Vec::new(),
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&columns).map_err(internal)?;
        for record in &self.records {
            let row = columns.iter().map(|c| cell(record.get(c).unwrap_or(&Value::Null)));
            w.write_record(row).map_err(internal)?;
        }
        String::from_utf8(w.into_inner().map_err(internal)?).map_err(internal)
    }
}

fn to_value(record: &impl Serialize) -> CliResult<Value> {
    let mut v = serde_json::to_value(record).map_err(internal)?;
    round_numbers(&mut v);
    Ok(v)
}

fn internal(err: impl std::fmt::Display) -> CliError {
    CliError::Internal(err.to_string())
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(is_scalar) => items.iter().map(cell).collect::<Vec<_>>().join(" "),
        Value::Array(items) if items.iter().all(|x| x.as_array().is_some_and(|a| a.iter().all(is_scalar))) => {
            items.iter().map(cell).collect::<Vec<_>>().join(";")
        }
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !v.is_array() && !v.is_object()
}

fn flatten_text(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (key, value) in map {
                let path = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
                flatten_text(&path, value, out);
            }
        }
        Value::Array(items) if items.iter().any(Value::is_object) => {
            for (i, item) in items.iter().enumerate() {
                flatten_text(&format!("{prefix}[{i}]"), item, out);
            }
        }
        scalar => {
            out.push_str(prefix);
            out.push_str(": ");
            out.push_str(&cell(scalar));
            out.push('\n');
        }
    }
}
