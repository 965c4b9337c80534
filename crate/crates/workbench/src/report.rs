//! Self-describing reports: JSON with sorted keys, or an indented plain-text table.

use std::fmt::Write as _;

use serde_json::{json, Value};

pub const SCHEMA: &str = "mirrorbench/1";

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub verb: String,
    pub field: String,
    pub parameters: Value,
    pub truncation: Value,
    pub result: Value,
    /// `None` for pure computations, otherwise the verified statement's truth value.
    pub verdict: Option<bool>,
}

impl Report {
    pub fn new(verb: &str, parameters: Value, truncation: Value, result: Value, verdict: Option<bool>) -> Self {
        Report { verb: verb.to_string(), field: String::new(), parameters, truncation, result, verdict }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "verb": self.verb,
            "field": self.field,
            "parameters": self.parameters,
            "truncation": self.truncation,
            "result": self.result,
            "verdict": self.verdict,
        })
    }

    /// Keys are sorted (the map type is ordered), so equal reports give equal bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "schema      {SCHEMA}").unwrap();
        writeln!(out, "verb        {}", self.verb).unwrap();
        writeln!(out, "field       {}", self.field).unwrap();
        writeln!(out, "parameters  {}", inline(&self.parameters)).unwrap();
        writeln!(out, "truncation  {}", inline(&self.truncation)).unwrap();
        let verdict = match self.verdict {
            Some(true) => "true",
            Some(false) => "false",
            None => "-",
        };
        writeln!(out, "verdict     {verdict}").unwrap();
        block(&mut out, &self.result, 0);
        out
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Object(m) if m.is_empty() => "-".into(),
        Value::Object(m) => m.iter().map(|(k, v)| format!("{k}={}", inline(v))).collect::<Vec<_>>().join(" "),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn scalar_array(v: &Value) -> bool {
    matches!(v, Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array() || scalar_array(x)))
}

fn block(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if x.is_object() || (x.is_array() && !scalar_array(x)) {
                    writeln!(out, "{pad}{k}:").unwrap();
                    block(out, x, depth + 1);
                } else {
                    writeln!(out, "{pad}{k}: {}", inline(x)).unwrap();
                }
            }
        }
        Value::Array(a) if !scalar_array(v) => {
            for (i, x) in a.iter().enumerate() {
                writeln!(out, "{pad}[{i}]").unwrap();
                block(out, x, depth + 1);
            }
        }
        other => writeln!(out, "{pad}{}", inline(other)).unwrap(),
    }
}
