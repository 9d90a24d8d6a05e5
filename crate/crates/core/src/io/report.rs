//! Command results rendered as text or JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub quiver: String,
    pub payload: Value,
    pub format: Format,
}

impl Report {
    pub fn new(command: &str, quiver: &str, payload: impl Serialize, format: Format) -> Self {
        Report {
            command: command.to_owned(),
            quiver: quiver.to_owned(),
            payload: serde_json::to_value(payload).expect("report payloads serialize"),
            format,
        }
    }

    pub fn render(&self) -> String {
        match self.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("json value");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = format!("{} {}\n", self.command, self.quiver);
                write_text(&mut out, &self.payload, 1);
                out
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| flat(i).is_some()) => Some(format!(
            "[{}]",
            items.iter().filter_map(flat).collect::<Vec<_>>().join(", ")
        )),
        Value::Object(map) if map.values().all(|x| flat(x).is_some()) => {
            let parts: Vec<String> = map
                .iter()
                .map(|(a, b)| format!("{a}={}", flat(b).unwrap_or_default()))
                .collect();
            Some(format!("{{{}}}", parts.join(", ")))
        }
        _ => None,
    }
}

/// Scalars that are not containers.
fn flat(v: &Value) -> Option<String> {
    match v {
        Value::Array(_) | Value::Object(_) => None,
        other => scalar(other),
    }
}

fn write_text(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                if let Some(s) = scalar(val) {
                    let _ = writeln!(out, "{pad}{k}: {s}");
                } else if let Value::String(block) = val {
                    let _ = writeln!(out, "{pad}{k}:");
                    for line in block.lines() {
                        let _ = writeln!(out, "{pad}  {line}");
                    }
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    write_text(out, val, depth + 1);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        write_text(out, item, depth + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}
