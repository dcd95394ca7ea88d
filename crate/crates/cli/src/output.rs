//! Rendering of reports as pretty JSON, compact JSON or flattened CSV.

use qmjac::algebra::{format_rational, IntMatrix, Poly, QuaternionRational, Rational};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Pretty => serde_json::to_string_pretty(v).expect("JSON values serialize"),
        Format::Json => serde_json::to_string(v).expect("JSON values serialize"),
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", v, &mut rows);
            let mut out = String::from("key,value");
            for (k, val) in rows {
                out.push('\n');
                out.push_str(&csv_field(&k));
                out.push(',');
                out.push_str(&csv_field(&val));
            }
            out
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn rational(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

/// Coefficients in increasing degree.
pub fn poly(p: &Poly<Rational>) -> Value {
    rationals(p.coeffs())
}

pub fn int_matrix(m: &IntMatrix) -> Value {
    json!(m.to_rows())
}

pub fn quaternion(q: &QuaternionRational) -> Value {
    json!({ "t": rational(&q.t), "i": rational(&q.x), "j": rational(&q.y), "k": rational(&q.z) })
}

pub fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}
