//! Command reports with matching JSON and text renderings.

use serde::Serialize;
use serde_json::{json, Value};

use crate::citation::Citation;

/// Exit statuses shared by every subcommand.
pub mod exit {
    /// Success, or a positive verdict.
    pub const OK: i32 = 0;
    /// A negative verdict or a mismatch.
    pub const NEGATIVE: i32 = 1;
    pub const PARSE_ERROR: i32 = 2;
    pub const SEMANTIC_ERROR: i32 = 3;
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub results: Value,
    pub citations: Vec<Citation>,
    pub exit: i32,
}

impl Report {
    pub fn new(command: &str, results: Value, exit: i32) -> Report {
        Report { command: command.to_string(), results, citations: Vec::new(), exit }
    }

    pub fn cite(mut self, mut citations: Vec<Citation>) -> Report {
        citations.sort();
        citations.dedup();
        self.citations = citations;
        self
    }

    pub fn error(command: &str, message: &str, exit: i32) -> Report {
        Report::new(command, json!({ "error": message }), exit)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Indented `key: value` lines over the same JSON value.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render(&self.to_json(), 0, &mut out);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| scalar(x).is_some() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap())),
    }
}
