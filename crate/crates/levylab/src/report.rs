//! Verification reports and deterministic serialization.
//!
//! Every verifier in the crate produces a [`VerificationReport`]: a named
//! bundle of inputs, computed values, the tolerance it was judged against, and
//! a pass flag. Reports serialize to JSON with a fixed key order and fixed
//! float formatting (17 significant digits) so that identical runs produce
//! byte-identical files. CSV tables use 10 significant digits.

use std::fmt::Write as _;

/// A JSON value with deterministic serialization.
///
/// Objects are ordered vectors of pairs, not maps, so key order is exactly
/// insertion order on every run.
#[derive(Debug, Clone, PartialEq)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Num(f64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

/// Format a float with 17 significant digits, round-trip exact for f64.
pub fn fmt_f64_json(x: f64) -> String {
    if x.is_nan() {
        return "null".to_string();
    }
    if x.is_infinite() {
        // JSON has no infinities; encode as a string the reader can recognize.
        return if x > 0.0 { "\"inf\"" } else { "\"-inf\"" }.to_string();
    }
    format!("{:e}", PrecisionF64(x, 16))
}

/// Format a float with 10 significant digits for CSV tables.
pub fn fmt_f64_csv(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    format!("{:e}", PrecisionF64(x, 9))
}

/// Helper forcing `{:e}` to a fixed mantissa precision.
struct PrecisionF64(f64, usize);

impl std::fmt::LowerExp for PrecisionF64 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.*e}", self.1, self.0)
    }
}

fn escape_json(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

impl Json {
    pub fn obj() -> Vec<(String, Json)> {
        Vec::new()
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => {
                let _ = write!(out, "{i}");
            }
            Json::Num(x) => out.push_str(&fmt_f64_json(*x)),
            Json::Str(s) => escape_json(s, out),
            Json::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    item.write(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            Json::Obj(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    escape_json(k, out);
                    out.push_str(": ");
                    v.write(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
        }
    }

    /// Serialize with two-space indentation and a trailing newline (LF only).
    pub fn to_string_pretty(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }
}

impl From<f64> for Json {
    fn from(x: f64) -> Self {
        Json::Num(x)
    }
}
impl From<bool> for Json {
    fn from(b: bool) -> Self {
        Json::Bool(b)
    }
}
impl From<&str> for Json {
    fn from(s: &str) -> Self {
        Json::Str(s.to_string())
    }
}
impl From<String> for Json {
    fn from(s: String) -> Self {
        Json::Str(s)
    }
}
impl From<i64> for Json {
    fn from(i: i64) -> Self {
        Json::Int(i)
    }
}
impl From<usize> for Json {
    fn from(i: usize) -> Self {
        Json::Int(i as i64)
    }
}

/// Outcome of one named check: what went in, what came out, the tolerance the
/// verdict used, and the verdict itself.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub name: String,
    pub inputs: Vec<(String, Json)>,
    pub computed: Vec<(String, Json)>,
    pub tolerance: f64,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>, tolerance: f64) -> Self {
        VerificationReport {
            name: name.into(),
            inputs: Vec::new(),
            computed: Vec::new(),
            tolerance,
            pass: false,
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Json>) -> Self {
        self.inputs.push((key.to_string(), value.into()));
        self
    }

    pub fn value(mut self, key: &str, value: impl Into<Json>) -> Self {
        self.computed.push((key.to_string(), value.into()));
        self
    }

    pub fn passing(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }

    /// Look up a computed scalar by key.
    pub fn get(&self, key: &str) -> Option<f64> {
        self.computed.iter().find(|(k, _)| k == key).and_then(|(_, v)| match v {
            Json::Num(x) => Some(*x),
            Json::Int(i) => Some(*i as f64),
            _ => None,
        })
    }

    pub fn to_json(&self) -> Json {
        Json::Obj(vec![
            ("name".to_string(), Json::Str(self.name.clone())),
            ("inputs".to_string(), Json::Obj(self.inputs.clone())),
            ("computed".to_string(), Json::Obj(self.computed.clone())),
            ("tolerance".to_string(), Json::Num(self.tolerance)),
            ("pass".to_string(), Json::Bool(self.pass)),
        ])
    }
}

/// Render a CSV table (header plus float rows) with LF line endings and
/// 10-significant-digit values.
pub fn csv_table(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| fmt_f64_csv(*x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_fixed_width_and_deterministic() {
        assert_eq!(fmt_f64_json(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64_csv(1.0), "1.000000000e0");
        assert_eq!(fmt_f64_json(-0.5), "-5.0000000000000000e-1");
        // 17 significant digits round-trip f64 exactly.
        let x = std::f64::consts::PI;
        let s = fmt_f64_json(x);
        assert_eq!(s.parse::<f64>().unwrap(), x);
    }

    #[test]
    fn json_objects_keep_insertion_order() {
        let j = Json::Obj(vec![
            ("zebra".into(), Json::Int(1)),
            ("apple".into(), Json::Int(2)),
        ]);
        let s = j.to_string_pretty();
        assert!(s.find("zebra").unwrap() < s.find("apple").unwrap());
        assert!(s.ends_with('\n'));
        assert!(!s.contains('\r'));
    }

    #[test]
    fn report_round_trip_fields() {
        let r = VerificationReport::new("demo", 1e-3)
            .input("n", 64usize)
            .value("residual", 1e-5)
            .passing(true);
        let s = r.to_json().to_string_pretty();
        assert!(s.contains("\"name\": \"demo\""));
        assert!(s.contains("\"pass\": true"));
        assert_eq!(r.get("residual"), Some(1e-5));
    }

    #[test]
    fn csv_has_lf_only() {
        let s = csv_table(&["t", "value"], &[vec![0.1, 2.0], vec![0.2, 3.0]]);
        assert_eq!(s, "t,value\n1.000000000e-1,2.000000000e0\n2.000000000e-1,3.000000000e0\n");
    }
}
