//! Encoding of command results as JSON, CSV or a markdown table.
//!
//! Every command produces a list of records. JSON keeps the nesting; CSV
//! and markdown flatten nested objects into dotted column names and join
//! arrays with `;`, writing nested arrays inline as JSON. Non-integral
//! numbers are rounded to 12 significant digits before encoding so that all
//! three formats print the same text.

use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::args::Format;

pub struct Output {
    records: Vec<Value>,
    /// Columns listed first in CSV and markdown; the rest follow sorted.
    leading: Vec<&'static str>,
}

impl Output {
    pub fn new<T: Serialize>(records: &[T], leading: &[&'static str]) -> serde_json::Result<Self> {
        let records = records.iter().map(|r| serde_json::to_value(r).map(round_floats)).collect::<Result<_, _>>()?;
        Ok(Output { records, leading: leading.to_vec() })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(&self.records),
            Format::Csv => csv_text(&self.table()),
            Format::Markdown => markdown(&self.table()),
        }
    }

    fn table(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let flat: Vec<Map<String, Value>> = self.records.iter().map(flatten).collect();
        let mut rest: Vec<String> = flat.iter().flat_map(|m| m.keys().cloned()).collect();
        rest.sort();
        rest.dedup();
        let mut columns: Vec<String> = self.leading.iter().map(|s| s.to_string()).filter(|c| rest.contains(c)).collect();
        rest.retain(|c| !columns.contains(c));
        columns.extend(rest);
        let rows = flat.iter().map(|m| columns.iter().map(|c| m.get(c).map(cell).unwrap_or_default()).collect()).collect();
        (columns, rows)
    }
}

pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round12(n.as_f64().unwrap_or(f64::NAN));
            Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

pub fn json(records: &[Value]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("values always serialize");
    s.push('\n');
    s
}

/// Nested objects become dotted keys; arrays stay as leaves.
pub fn flatten(v: &Value) -> Map<String, Value> {
    fn walk(prefix: &str, v: &Value, out: &mut Map<String, Value>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, out);
                }
            }
            other => {
                out.insert(prefix.to_string(), other.clone());
            }
        }
    }
    let mut out = Map::new();
    walk("", v, &mut out);
    out
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(a) => a
            .iter()
            .map(|x| if x.is_array() || x.is_object() { x.to_string() } else { cell(x) })
            .collect::<Vec<_>>()
            .join(";"),
        Value::Object(_) | Value::Bool(_) | Value::Number(_) => v.to_string(),
    }
}

fn csv_text((columns, rows): &(Vec<String>, Vec<Vec<String>>)) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let write = |w: &mut csv::Writer<Vec<u8>>| -> csv::Result<()> {
        w.write_record(columns)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    };
    write(&mut w).expect("writing to memory cannot fail");
    String::from_utf8(w.into_inner().expect("flushed")).expect("csv output is utf-8")
}

fn markdown((columns, rows): &(Vec<String>, Vec<Vec<String>>)) -> String {
    let esc = |s: &str| s.replace('|', "\\|");
    let mut out = format!("| {} |\n", columns.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" | "));
    out.push_str(&format!("|{}\n", "---|".repeat(columns.len())));
    for r in rows {
        out.push_str(&format!("| {} |\n", r.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" | ")));
    }
    out
}
