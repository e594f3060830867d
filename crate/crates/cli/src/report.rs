//! Ordered key-value reports, rendered as text or as one JSON object.

use serde_json::{Map, Value};

#[derive(Clone, Debug, Default)]
pub struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|f| f.0 == key).map(|f| &f.1)
    }

    pub fn to_json(&self) -> String {
        let map: Map<String, Value> = self.fields.iter().cloned().collect();
        let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.fields {
            render(&mut out, key, value, 0);
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            Some(items.iter().map(|i| scalar(i).unwrap_or_default()).collect::<Vec<_>>().join(" "))
        }
        _ => None,
    }
}

fn render(out: &mut String, key: &str, value: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    if let Some(s) = scalar(value) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match value {
        Value::String(s) => {
            for line in s.lines() {
                out.push_str(&format!("{pad}  {line}\n"));
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}  {s}\n")),
                    None => {
                        if let Value::Object(map) = item {
                            for (k, v) in map {
                                render(out, k, v, indent + 2);
                            }
                        }
                    }
                }
            }
        }
        Value::Object(map) => {
            for (k, v) in map {
                render(out, k, v, indent + 2);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_and_json_keep_order() {
        let mut r = Report::new();
        r.put("b", 1).put("a", true).put("chain", json!([-11, -1])).put("rows", json!([[0, 1], [1, 0]]));
        assert_eq!(r.to_text(), "b: 1\na: yes\nchain: -11 -1\nrows:\n  0 1\n  1 0\n");
        assert!(r.to_json().find("\"b\"").unwrap() < r.to_json().find("\"a\"").unwrap());
    }

    #[test]
    fn multiline_strings_are_indented() {
        let mut r = Report::new();
        r.put("table", "x\ny\n");
        assert_eq!(r.to_text(), "table:\n  x\n  y\n");
    }
}
