//! Report lines as ordered `key=value` fields, rendered as text or as one
//! JSON object per line.

use homds::mdscheck::CheckReport;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
}

pub type Fields = Vec<(String, String)>;

pub fn field(key: &str, value: impl ToString) -> (String, String) {
    (key.to_string(), value.to_string())
}

pub fn report_fields(r: &CheckReport, deterministic: bool) -> Fields {
    let ms = if deterministic { 0 } else { r.elapsed.as_millis() };
    let mut out = vec![
        field("property", &r.property),
        field("verdict", r.verdict),
        field("tuples", r.tuples),
        field("time_ms", ms),
    ];
    if let Some(w) = &r.witness {
        out.push(field("witness", w));
    }
    out.extend(r.extra.iter().cloned());
    out
}

pub fn render(fields: &Fields, format: Format) -> String {
    match format {
        Format::Text => fields.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" "),
        Format::JsonLines => {
            let mut obj = Map::new();
            for (k, v) in fields {
                let value = match v.parse::<u64>() {
                    Ok(n) => Value::from(n),
                    Err(_) => Value::from(v.clone()),
                };
                obj.insert(k.clone(), value);
            }
            Value::Object(obj).to_string()
        }
    }
}
