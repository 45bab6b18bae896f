//! Indented plain-text rendering of a report.

use serde_json::Value;

const INLINE_WIDTH: usize = 72;

fn is_leafy(v: &Value) -> bool {
    match v {
        Value::Object(o) => o.len() <= 1 && o.values().all(|x| !x.is_object()),
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() || x.as_object().unwrap().len() <= 1),
        _ => true,
    }
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("-".into()),
        _ if is_leafy(v) => {
            let s = v.to_string();
            (s.len() <= INLINE_WIDTH).then_some(s)
        }
        _ => None,
    }
}

fn walk(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        walk(x, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}[{i}] {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        walk(x, indent + 2, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}

pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    walk(report, 0, &mut out);
    out
}
