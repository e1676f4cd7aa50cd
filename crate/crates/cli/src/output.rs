//! Rendering of result documents as JSON, CSV or plain text.

use std::fmt::Write as _;

use serde_json::{Map, Number, Value};

use crate::config::Format;

/// Significant digits kept for floating-point values.
pub const FLOAT_DIGITS: usize = 15;

/// Rounds `x` to [`FLOAT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", FLOAT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

/// Applies [`round_sig`] to every float in `v`; integers are untouched.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            // -0.0 would serialize as "-0.0"; normalise it
            let x = if x == 0.0 { 0.0 } else { x };
            *v = Number::from_f64(x)
                .map(Value::Number)
                .unwrap_or(Value::Null);
        }
        Value::Array(xs) => xs.iter_mut().for_each(round_floats),
        Value::Object(m) => m.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Flattens nested objects and arrays into `(dotted.path, scalar)` pairs,
/// preserving key order.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    flatten_into(v, String::new(), &mut out);
    out
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn flatten_into(v: &Value, prefix: String, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) if is_rational(m) => out.push((prefix, rational_text(m))),
        Value::Object(m) => {
            for (k, x) in m {
                flatten_into(x, join(&prefix, k), out);
            }
        }
        Value::Array(xs) if xs.is_empty() => out.push((prefix, String::new())),
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten_into(x, join(&prefix, &i.to_string()), out);
            }
        }
        Value::String(s) => out.push((prefix, s.clone())),
        Value::Null => out.push((prefix, String::new())),
        other => out.push((prefix, other.to_string())),
    }
}

fn is_rational(m: &Map<String, Value>) -> bool {
    m.len() == 2
        && m.get("num").is_some_and(Value::is_string)
        && m.get("den").is_some_and(Value::is_string)
}

fn rational_text(m: &Map<String, Value>) -> String {
    let num = m["num"].as_str().unwrap_or_default();
    let den = m["den"].as_str().unwrap_or_default();
    if den == "1" {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '|']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders `doc` (already float-rounded) in the requested format. The result
/// always ends with a newline.
pub fn render(doc: &Value, format: Format) -> String {
    let mut doc = doc.clone();
    round_floats(&mut doc);
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("key,value\n");
            for (k, v) in flatten(&doc) {
                let _ = writeln!(s, "{},{}", csv_field(&k), csv_field(&v));
            }
            s
        }
        Format::Pretty => {
            let rows = flatten(&doc);
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            let mut s = String::new();
            for (k, v) in rows {
                let _ = writeln!(s, "{k:<width$}  {v}");
            }
            s
        }
    }
}
