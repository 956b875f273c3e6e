use serde_json::Value;

use crate::args::Format;
use crate::commands::Outcome;

pub fn render(outcome: &Outcome, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(&outcome.value).expect("JSON value");
            s.push('\n');
            s
        }
        Format::Csv => outcome.csv.clone().unwrap_or_else(|| key_value_csv(&outcome.value)),
        Format::Table => table(&outcome.value),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn key_value_csv(v: &Value) -> String {
    let mut out = String::from("key,value\n");
    if let Value::Object(map) = v {
        for (k, val) in map {
            out.push_str(&format!("{},{}\n", csv_field(k), csv_field(&scalar(val))));
        }
    }
    out
}

fn table(v: &Value) -> String {
    let Value::Object(map) = v else { return format!("{}\n", scalar(v)) };
    let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, val) in map {
        let pad = width - k.chars().count();
        out.push_str(&format!("{k}{}  {}\n", " ".repeat(pad), scalar(val)));
    }
    out
}
