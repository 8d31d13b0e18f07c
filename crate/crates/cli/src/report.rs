use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::ReportFormat;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// The file a report is about. Only the file name is recorded so reports do
/// not depend on the working directory.
#[derive(Debug, Serialize)]
pub struct Instance {
    pub file: String,
    pub name: Option<String>,
    pub order: usize,
}

impl Instance {
    pub fn new(path: &Path, name: Option<&str>, order: usize) -> Self {
        Instance {
            file: path
                .file_name()
                .map_or_else(|| path.display().to_string(), |f| f.to_string_lossy().into_owned()),
            name: name.map(str::to_owned),
            order,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport<'a, T> {
    pub tool_version: &'static str,
    pub instance: Option<Instance>,
    pub subcommand: &'a str,
    pub results: T,
    pub exit_status: u8,
}

impl<T: Serialize> RunReport<'_, T> {
    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => {
                let mut s = serde_json::to_string(self).expect("reports serialize");
                s.push('\n');
                s
            }
            ReportFormat::Text => {
                let value = serde_json::to_value(self).expect("reports serialize");
                let mut out = String::new();
                text_block(&value, 0, &mut out);
                out
            }
        }
    }
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.is_empty() => Some("[]".into()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items
                .iter()
                .map(|i| match i {
                    Value::Array(_) | Value::Object(_) => None,
                    other => inline(other),
                })
                .collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(map) if map.is_empty() => Some("{}".into()),
        Value::Object(_) => None,
    }
}

/// Indented `key: value` rendering; flat arrays stay on one line.
fn text_block(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match inline(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        text_block(item, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match inline(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let mut nested = String::new();
                        text_block(item, indent + 2, &mut nested);
                        let body = nested.get(indent + 2..).unwrap_or("");
                        let _ = write!(out, "{pad}- {body}");
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", inline(other).unwrap_or_default());
        }
    }
}
