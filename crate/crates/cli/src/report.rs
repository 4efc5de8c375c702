use serde_json::{Map, Value};

pub const SCHEMA: &str = "ftspanner/1";

/// Arrays longer than this are summarized in text reports.
const TEXT_ARRAY_LIMIT: usize = 16;

/// Renders a report as `dotted.key: value` lines.
pub fn to_text(report: &Value) -> String {
    let mut out = String::new();
    render(report, "", &mut out);
    out
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

fn render(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (key, child) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                render(child, &path, out);
            }
        }
        Value::Array(items) => {
            let inline: Option<Vec<String>> = items.iter().map(scalar).collect();
            match inline {
                Some(parts) if parts.len() <= TEXT_ARRAY_LIMIT => {
                    out.push_str(&format!("{prefix}: [{}]\n", parts.join(", ")));
                }
                _ if items.len() <= TEXT_ARRAY_LIMIT && items.iter().all(Value::is_object) => {
                    for (i, item) in items.iter().enumerate() {
                        render(item, &format!("{prefix}[{i}]"), out);
                    }
                }
                _ => out.push_str(&format!("{prefix}: [{} items]\n", items.len())),
            }
        }
        other => out.push_str(&format!("{prefix}: {}\n", scalar(other).unwrap_or_default())),
    }
}

/// Top-level report skeleton; `body` fields are appended after the header.
pub fn envelope(command: &str, status: &str, config: Value, body: Map<String, Value>) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), SCHEMA.into());
    map.insert("command".into(), command.into());
    map.insert("status".into(), status.into());
    map.insert("config".into(), config);
    map.extend(body);
    Value::Object(map)
}
