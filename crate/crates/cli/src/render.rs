use serde::Serialize;
use serde_json::{Map, Value};

/// Every command prints one of these, as JSON or as flattened text.
#[derive(Debug, Serialize)]
pub struct Envelope {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub verdicts: Value,
}

impl Envelope {
    pub fn to_json(&self) -> String {
        // through Value so every object has sorted keys
        let value = serde_json::to_value(self).expect("envelope is serializable");
        serde_json::to_string_pretty(&value).expect("value is serializable")
    }

    /// One `path: value` line per leaf, in the same key order as the JSON.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("envelope is serializable");
        let mut out = String::new();
        flatten("", &value, &mut out);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn flatten(path: &str, v: &Value, out: &mut String) {
    let join = |key: &str| {
        if path.is_empty() {
            key.to_string()
        } else {
            format!("{path}.{key}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(&join(k), child, out);
            }
        }
        Value::Array(items) => {
            if let Some(scalars) = items.iter().map(scalar).collect::<Option<Vec<_>>>() {
                out.push_str(&format!("{path}: {}\n", scalars.join(",")));
            } else {
                for (i, child) in items.iter().enumerate() {
                    flatten(&join(&i.to_string()), child, out);
                }
            }
        }
        leaf => out.push_str(&format!("{path}: {}\n", scalar(leaf).expect("leaf"))),
    }
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(
        pairs
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect::<Map<_, _>>(),
    )
}

pub fn num(n: impl std::fmt::Display) -> Value {
    Value::String(n.to_string())
}

pub fn nums<T: std::fmt::Display>(items: &[T]) -> Value {
    Value::Array(items.iter().map(num).collect())
}
