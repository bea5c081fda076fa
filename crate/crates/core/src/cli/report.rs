//! Machine-readable command reports with deterministic serialization.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Info,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass | Outcome::Info => 0,
            Outcome::Fail => 1,
        }
    }

    pub fn from_pass(pass: bool) -> Self {
        if pass { Outcome::Pass } else { Outcome::Fail }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// Effective arguments after merging the config file.
    pub args: Map<String, Value>,
    /// SHA-256 of the canonical command and arguments.
    pub inputs_digest: String,
    pub results: Value,
    pub warnings: Vec<String>,
    pub verdict: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl Report {
    pub fn new(command: &str, args: Map<String, Value>, results: Value, warnings: Vec<String>, verdict: Outcome) -> Self {
        let args = match normalize(Value::Object(args)) {
            Value::Object(m) => m,
            _ => unreachable!(),
        };
        let mut echo = Map::new();
        echo.insert("command".into(), Value::String(command.into()));
        echo.insert("args".into(), Value::Object(args.clone()));
        let digest = Sha256::digest(to_json(&Value::Object(echo)).as_bytes());
        let inputs_digest = digest.iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        });
        Report {
            command: command.into(),
            args,
            inputs_digest,
            results: normalize(results),
            warnings,
            verdict,
            wall_time_s: None,
        }
    }

    pub fn to_json(&self) -> String {
        to_json(&serde_json::to_value(self).expect("report serializes"))
    }

    /// Indented `key: value` lines for the results.
    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\nverdict: {}\n", self.command, outcome_name(self.verdict));
        flatten("", &self.results, &mut out);
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::Info => "info",
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) && a.len() > 2 => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => {
            let mut s = String::new();
            write_value(v, &mut s);
            out.push_str(&format!("{prefix}: {s}\n"));
        }
    }
}

/// Formats a float the way reports print it.
pub fn format_float(x: f64) -> String {
    format!("{x:.12e}")
}

/// Rounds every float to the printed precision so that a report parsed
/// back from its JSON compares equal to the original.
fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            let y: f64 = format_float(x).parse().expect("formatted float parses");
            serde_json::Number::from_f64(y).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(normalize).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, x)| (k, normalize(x))).collect()),
        other => other,
    }
}

/// Compact JSON with sorted keys and `%.12e` floats.
pub fn to_json(v: &Value) -> String {
    let mut s = String::new();
    write_value(v, &mut s);
    s
}

fn write_value(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) if !n.is_f64() => out.push_str(&i.to_string()),
            (_, Some(u)) if !n.is_f64() => out.push_str(&u.to_string()),
            _ => out.push_str(&format_float(n.as_f64().expect("number"))),
        },
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(a) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(x, out);
            }
            out.push(']');
        }
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write_value(&m[k], out);
            }
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_use_fixed_exponent_format() {
        assert_eq!(to_json(&json!({"b": 0.1, "a": [1, -2.5e-7]})), "{\"a\":[1,-2.500000000000e-7],\"b\":1.000000000000e-1}");
    }

    #[test]
    fn reports_round_trip() {
        let mut args = Map::new();
        args.insert("M".into(), json!(0.6));
        let r = Report::new("check", args, json!({"min_margin": 0.015430918273645, "grid": [0.5, 0.99]}), vec![], Outcome::Pass);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), r.to_json());
        assert_eq!(r.inputs_digest.len(), 64);
    }
}
