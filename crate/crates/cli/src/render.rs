//! Plain-text rendering of a report. Keys keep their JSON order, so two runs
//! on the same input print the same bytes apart from the timing line.

use serde_json::Value;

pub fn text(report: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = report {
        for (k, v) in map {
            if v.is_null() && k != "results" {
                continue;
            }
            entry(&mut out, 0, k, v);
        }
    }
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(Value::is_number) => {
            let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            Some(format!("({})", parts.join(",")))
        }
        Value::Array(items) if items.iter().all(|x| scalar(x).is_some() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        Value::Object(m) if m.is_empty() => Some("{}".into()),
        _ => None,
    }
}

fn entry(out: &mut String, depth: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                entry(out, depth + 1, k, x);
            }
        }
        Value::Array(items) => {
            for item in items {
                row(out, depth + 1, item);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

fn row(out: &mut String, depth: usize, item: &Value) {
    let pad = "  ".repeat(depth);
    match item {
        Value::Object(m) => {
            let cells: Vec<String> = m
                .iter()
                .map(|(k, x)| format!("{k}={}", scalar(x).unwrap_or_else(|| x.to_string())))
                .collect();
            out.push_str(&format!("{pad}- {}\n", cells.join("  ")));
        }
        other => out.push_str(&format!(
            "{pad}- {}\n",
            scalar(other).unwrap_or_else(|| other.to_string())
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn renders_nested_values() {
        let v = json!({
            "command": "hilbert",
            "char_compare": null,
            "results": { "hilbert_function": [1, 3, 3, 1], "shape": ["unimodal", "symmetric"], "rows": [{"degree": 0, "maximal": true}] },
        });
        assert_eq!(
            text(&v),
            "command: hilbert\nresults:\n  hilbert_function: (1,3,3,1)\n  shape: [unimodal, symmetric]\n  rows:\n    - degree=0  maximal=true\n"
        );
    }
}
